#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "qcka/postmatch.hpp"
#include "qcka/rng.hpp"

using qcka::Basis;
using qcka::MatchedGroup;
using qcka::PairEvent;
using qcka::SiftedStream;

namespace {

PairEvent both(int stream, std::int64_t slot, Basis basis, std::uint8_t a,
               std::uint8_t b) {
  PairEvent e;
  e.stream = stream;
  e.slot = slot;
  e.alice_basis = basis;
  e.bob_basis = basis;
  e.alice_bit = a;
  e.bob_bit = b;
  return e;
}

PairEvent mismatched(int stream, std::int64_t slot) {
  PairEvent e;
  e.stream = stream;
  e.slot = slot;
  e.alice_basis = Basis::Z;
  e.bob_basis = Basis::X;
  e.alice_bit = 0;
  e.bob_bit = 1;
  return e;
}

// Deterministic random sifted streams for property checks.
std::vector<SiftedStream> random_streams(int n_streams, int z_len, int x_len,
                                         std::uint64_t seed) {
  std::vector<SiftedStream> streams(static_cast<std::size_t>(n_streams));
  for (int s = 0; s < n_streams; ++s) {
    qcka::PulseRng rng(seed, static_cast<std::uint64_t>(s), 0);
    for (int j = 0; j < z_len + s; ++j)  // deliberately unequal lengths
      streams[s].z.push_back({j, rng.bit(), rng.bit()});
    for (int j = 0; j < x_len + (n_streams - s); ++j)
      streams[s].x.push_back({j, rng.bit(), rng.bit()});
  }
  return streams;
}

}  // namespace

TEST_CASE("sifting keeps same-basis double detections in order") {
  // two streams of four slots: X, other, Z, Z and Z, Z, X, other
  std::vector<std::vector<PairEvent>> streams(2);
  streams[0] = {both(0, 1, Basis::X, 0, 0), mismatched(0, 2),
                both(0, 3, Basis::Z, 1, 1), both(0, 4, Basis::Z, 0, 0)};
  PairEvent missed;  // Bob lost the photon in slot 4 of stream 2
  missed.stream = 1;
  missed.slot = 4;
  missed.alice_basis = Basis::Z;
  missed.alice_bit = 1;
  streams[1] = {both(1, 1, Basis::Z, 1, 1), both(1, 2, Basis::Z, 0, 0),
                both(1, 3, Basis::X, 1, 1), missed};

  const auto sifted = qcka::sift_valid(streams);
  REQUIRE(sifted.size() == 2);
  REQUIRE(sifted[0].x.size() == 1);
  CHECK(sifted[0].x[0].slot == 1);
  REQUIRE(sifted[0].z.size() == 2);
  CHECK(sifted[0].z[0].slot == 3);
  CHECK(sifted[0].z[1].slot == 4);
  REQUIRE(sifted[1].z.size() == 2);
  CHECK(sifted[1].z[0].slot == 1);
  CHECK(sifted[1].z[1].slot == 2);
  REQUIRE(sifted[1].x.size() == 1);
  CHECK(sifted[1].x[0].slot == 3);

  SUBCASE("matching pairs the j-th events across streams") {
    const auto z_groups = qcka::match_groups(sifted, Basis::Z);
    const auto x_groups = qcka::match_groups(sifted, Basis::X);
    REQUIRE(x_groups.size() == 1);   // slot 1 of stream 1 with slot 3 of stream 2
    REQUIRE(z_groups.size() == 2);   // (3,1) and (4,2)
    CHECK(z_groups[0].a_bits == std::vector<std::uint8_t>{1, 1});
    CHECK(z_groups[1].a_bits == std::vector<std::uint8_t>{0, 0});
  }
}

TEST_CASE("degenerate sift inputs") {
  std::vector<std::vector<PairEvent>> all_mismatched(2);
  for (int s = 0; s < 2; ++s)
    for (int j = 0; j < 5; ++j) all_mismatched[s].push_back(mismatched(s, j));
  const auto sifted = qcka::sift_valid(all_mismatched);
  CHECK(sifted[0].z.empty());
  CHECK(sifted[0].x.empty());
  CHECK(qcka::match_groups(sifted, Basis::Z).empty());

  std::vector<std::vector<PairEvent>> all_z(2);
  for (int s = 0; s < 2; ++s)
    for (int j = 0; j < 5; ++j) all_z[s].push_back(both(s, j, Basis::Z, 1, 1));
  const auto sifted_z = qcka::sift_valid(all_z);
  CHECK(sifted_z[0].z.size() == 5);
  CHECK(qcka::match_groups(sifted_z, Basis::Z).size() == 5);
}

TEST_CASE("Z-basis pipeline") {
  MatchedGroup group;
  group.basis = Basis::Z;
  group.a_bits = {1, 0};
  group.b_bits = {1, 0};
  qcka::process_z(group);
  CHECK(group.c_bits == std::vector<std::uint8_t>{0, 1});
  CHECK(group.b_prime == std::vector<std::uint8_t>{1, 1});
  // everybody agrees with Alice's first bit
  CHECK(group.b_prime[0] == group.a_bits[0]);
  CHECK(group.b_prime[1] == group.a_bits[0]);

  SUBCASE("XOR identity holds for every bit pattern") {
    for (int pattern = 0; pattern < 64; ++pattern) {
      MatchedGroup g;
      g.basis = Basis::Z;
      g.a_bits = {std::uint8_t(pattern & 1), std::uint8_t(pattern >> 1 & 1),
                  std::uint8_t(pattern >> 2 & 1)};
      g.b_bits = {std::uint8_t(pattern >> 3 & 1), std::uint8_t(pattern >> 4 & 1),
                  std::uint8_t(pattern >> 5 & 1)};
      qcka::process_z(g);
      for (std::size_t i = 0; i < 3; ++i)
        CHECK(g.b_prime[i] == (g.a_bits[i] ^ g.a_bits[0] ^ g.b_bits[i]));
    }
  }

  SUBCASE("single flip in one Bob disturbs exactly one output") {
    for (std::size_t flip = 0; flip < 3; ++flip) {
      MatchedGroup g;
      g.basis = Basis::Z;
      g.a_bits = {1, 0, 1};
      g.b_bits = g.a_bits;
      g.b_bits[flip] ^= 1;
      qcka::process_z(g);
      int disagreements = 0;
      for (std::size_t i = 0; i < 3; ++i)
        disagreements += g.b_prime[i] != g.a_bits[0];
      CHECK(disagreements == 1);
    }
  }

  SUBCASE("basis mismatch is rejected") {
    MatchedGroup g;
    g.basis = Basis::X;
    g.a_bits = {0};
    g.b_bits = {0};
    CHECK_THROWS_AS(qcka::process_z(g), std::invalid_argument);
  }
}

TEST_CASE("X-basis pipeline") {
  SUBCASE("noiseless groups satisfy the parity relation") {
    MatchedGroup g;
    g.basis = Basis::X;
    g.a_bits = {1, 0, 1, 1};
    g.b_bits = g.a_bits;
    qcka::process_x(g);
    std::uint8_t bob_parity = 0;
    for (auto b : g.b_bits) bob_parity ^= b;
    CHECK(g.a_prime_x == bob_parity);
  }

  SUBCASE("an even number of flips is invisible, an odd number is not") {
    MatchedGroup base;
    base.basis = Basis::X;
    base.a_bits = {1, 0, 1};
    base.b_bits = base.a_bits;

    for (int mask = 0; mask < 8; ++mask) {
      MatchedGroup g = base;
      int flips = 0;
      for (int i = 0; i < 3; ++i)
        if (mask >> i & 1) {
          g.b_bits[static_cast<std::size_t>(i)] ^= 1;
          ++flips;
        }
      qcka::process_x(g);
      std::uint8_t bob_parity = 0;
      for (auto b : g.b_bits) bob_parity ^= b;
      if (flips % 2 == 0)
        CHECK(g.a_prime_x == bob_parity);
      else
        CHECK(g.a_prime_x != bob_parity);
    }
  }

  SUBCASE("basis mismatch is rejected") {
    MatchedGroup g;
    g.basis = Basis::Z;
    g.a_bits = {0};
    g.b_bits = {0};
    CHECK_THROWS_AS(qcka::process_x(g), std::invalid_argument);
  }
}

TEST_CASE("tallies") {
  SUBCASE("empty input is an error") {
    std::vector<MatchedGroup> none;
    CHECK_THROWS_AS(qcka::tally_errors(none), std::invalid_argument);
  }

  SUBCASE("noiseless run tallies zero everywhere") {
    auto streams = random_streams(4, 200, 150, 11);
    for (auto& stream : streams) {
      for (auto& e : stream.z) e.bob_bit = e.alice_bit;
      for (auto& e : stream.x) e.bob_bit = e.alice_bit;
    }
    const auto tally = qcka::tally_matched(streams);
    CHECK(tally.groups_z == 200);
    CHECK(tally.groups_x == 151);
    CHECK(tally.errors_x == 0);
    CHECK(tally.errors_z_any == 0);
    for (int s = 0; s < 4; ++s) CHECK(tally.errors_z_marginal[s] == 0);
  }

  SUBCASE("group counts equal the scarcest stream") {
    const auto streams = random_streams(3, 40, 25, 5);
    std::size_t min_z = streams[0].z.size(), min_x = streams[0].x.size();
    for (const auto& s : streams) {
      min_z = std::min(min_z, s.z.size());
      min_x = std::min(min_x, s.x.size());
    }
    const auto tally = qcka::tally_matched(streams);
    CHECK(tally.groups_z == static_cast<std::int64_t>(min_z));
    CHECK(tally.groups_x == static_cast<std::int64_t>(min_x));
  }

  SUBCASE("streaming tally equals the materialized pipeline") {
    const auto streams = random_streams(5, 300, 300, 99);
    const auto streaming = qcka::tally_matched(streams);

    auto z_groups = qcka::match_groups(streams, Basis::Z);
    auto x_groups = qcka::match_groups(streams, Basis::X);
    for (auto& g : z_groups) qcka::process_z(g);
    for (auto& g : x_groups) qcka::process_x(g);
    std::vector<MatchedGroup> all;
    all.insert(all.end(), z_groups.begin(), z_groups.end());
    all.insert(all.end(), x_groups.begin(), x_groups.end());
    const auto materialized = qcka::tally_errors(all);

    CHECK(streaming.groups_z == materialized.groups_z);
    CHECK(streaming.groups_x == materialized.groups_x);
    CHECK(streaming.errors_x == materialized.errors_x);
    CHECK(streaming.errors_z_any == materialized.errors_z_any);
    CHECK(streaming.errors_z_marginal == materialized.errors_z_marginal);
  }
}
