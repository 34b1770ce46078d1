#include "qcka/postmatch.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcka {

SiftedStream sift_valid(std::span<const PairEvent> events) {
  SiftedStream sifted;
  for (const PairEvent& event : events) {
    if (!event.alice_basis || !event.bob_basis) continue;
    if (*event.alice_basis != *event.bob_basis) continue;
    ValidEvent valid{event.slot, event.alice_bit, event.bob_bit};
    if (*event.alice_basis == Basis::Z)
      sifted.z.push_back(valid);
    else
      sifted.x.push_back(valid);
  }
  return sifted;
}

std::vector<SiftedStream> sift_valid(
    std::span<const std::vector<PairEvent>> streams) {
  std::vector<SiftedStream> sifted;
  sifted.reserve(streams.size());
  for (const std::vector<PairEvent>& stream : streams)
    sifted.push_back(sift_valid(stream));
  return sifted;
}

namespace {

const std::vector<ValidEvent>& basis_list(const SiftedStream& stream,
                                          Basis basis) {
  return basis == Basis::Z ? stream.z : stream.x;
}

std::int64_t group_count(std::span<const SiftedStream> streams, Basis basis) {
  if (streams.empty()) return 0;
  std::int64_t count =
      static_cast<std::int64_t>(basis_list(streams[0], basis).size());
  for (const SiftedStream& stream : streams)
    count = std::min(count,
                     static_cast<std::int64_t>(basis_list(stream, basis).size()));
  return count;
}

void fill_group(std::span<const SiftedStream> streams, Basis basis,
                std::int64_t j, MatchedGroup& group) {
  const std::size_t n_streams = streams.size();
  group.basis = basis;
  group.index = j;
  group.a_bits.resize(n_streams);
  group.b_bits.resize(n_streams);
  group.c_bits.clear();
  group.b_prime.clear();
  group.a_prime_x = 0;
  group.processed = false;
  for (std::size_t i = 0; i < n_streams; ++i) {
    const ValidEvent& event = basis_list(streams[i], basis)[j];
    group.a_bits[i] = event.alice_bit;
    group.b_bits[i] = event.bob_bit;
  }
}

void process_group(MatchedGroup& group) {
  if (group.basis == Basis::Z)
    process_z(group);
  else
    process_x(group);
}

void tally_group(const MatchedGroup& group, ErrorTally& tally) {
  const std::size_t n_streams = group.a_bits.size();
  if (group.basis == Basis::Z) {
    ++tally.groups_z;
    bool any = false;
    for (std::size_t i = 0; i < n_streams; ++i) {
      if (group.b_prime[i] != group.a_bits[0]) {
        ++tally.errors_z_marginal[i];
        any = true;
      }
    }
    if (any) ++tally.errors_z_any;
  } else {
    ++tally.groups_x;
    std::uint8_t bob_parity = 0;
    for (std::size_t i = 0; i < n_streams; ++i) bob_parity ^= group.b_bits[i];
    if (group.a_prime_x != bob_parity) ++tally.errors_x;
  }
}

}  // namespace

std::vector<MatchedGroup> match_groups(std::span<const SiftedStream> streams,
                                       Basis basis) {
  const std::int64_t count = group_count(streams, basis);
  std::vector<MatchedGroup> groups(static_cast<std::size_t>(count));
  for (std::int64_t j = 0; j < count; ++j)
    fill_group(streams, basis, j, groups[static_cast<std::size_t>(j)]);
  return groups;
}

void process_z(MatchedGroup& group) {
  if (group.basis != Basis::Z)
    throw std::invalid_argument("process_z: group is not Z-basis");
  const std::size_t n_streams = group.a_bits.size();
  group.c_bits.resize(n_streams);
  group.b_prime.resize(n_streams);
  for (std::size_t i = 0; i < n_streams; ++i) {
    group.c_bits[i] = group.a_bits[0] ^ group.a_bits[i];
    group.b_prime[i] = group.c_bits[i] ^ group.b_bits[i];
  }
  group.processed = true;
}

void process_x(MatchedGroup& group) {
  if (group.basis != Basis::X)
    throw std::invalid_argument("process_x: group is not X-basis");
  std::uint8_t parity = 0;
  for (std::uint8_t bit : group.a_bits) parity ^= bit;
  group.a_prime_x = parity;
  group.processed = true;
}

double ErrorTally::error_x() const {
  return groups_x > 0 ? static_cast<double>(errors_x) / groups_x : 0.0;
}

double ErrorTally::error_z() const {
  return groups_z > 0 ? static_cast<double>(errors_z_any) / groups_z : 0.0;
}

double ErrorTally::marginal_z(int stream) const {
  return groups_z > 0
             ? static_cast<double>(errors_z_marginal[stream]) / groups_z
             : 0.0;
}

ErrorTally tally_errors(std::span<const MatchedGroup> groups) {
  if (groups.empty())
    throw std::invalid_argument("tally_errors: empty group list");
  ErrorTally tally;
  tally.errors_z_marginal.assign(groups.front().a_bits.size(), 0);
  for (const MatchedGroup& group : groups) {
    if (!group.processed)
      throw std::invalid_argument("tally_errors: group not processed");
    tally_group(group, tally);
  }
  return tally;
}

ErrorTally tally_matched(std::span<const SiftedStream> streams) {
  ErrorTally tally;
  tally.errors_z_marginal.assign(streams.size(), 0);
  MatchedGroup group;  // reused; matching allocates nothing per group
  for (Basis basis : {Basis::Z, Basis::X}) {
    const std::int64_t count = group_count(streams, basis);
    for (std::int64_t j = 0; j < count; ++j) {
      fill_group(streams, basis, j, group);
      process_group(group);
      tally_group(group, tally);
    }
  }
  return tally;
}

}  // namespace qcka
