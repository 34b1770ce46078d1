#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qcka {

enum class Basis : std::uint8_t { Z = 0, X = 1 };

// One pulse slot of one pair stream as recorded by its two ends. A party
// that did not detect carries no basis and no bit.
struct PairEvent {
  int stream = 0;         // pair index, 0-based
  std::int64_t slot = 0;  // pulse index
  std::optional<Basis> alice_basis;
  std::optional<Basis> bob_basis;
  std::uint8_t alice_bit = 0;  // meaningful iff alice_basis is set
  std::uint8_t bob_bit = 0;    // meaningful iff bob_basis is set
};

// A valid event: both ends detected under the same basis.
struct ValidEvent {
  std::int64_t slot = 0;
  std::uint8_t alice_bit = 0;
  std::uint8_t bob_bit = 0;
};

// Valid events of one stream, split by basis, in slot order.
struct SiftedStream {
  std::vector<ValidEvent> z;
  std::vector<ValidEvent> x;
};

// Keeps only double detections with matching announced bases; order preserved.
SiftedStream sift_valid(std::span<const PairEvent> events);
std::vector<SiftedStream> sift_valid(std::span<const std::vector<PairEvent>> streams);

// The j-th same-basis valid event of every stream, bundled. Bit vectors are
// indexed by stream (n-1 entries each).
struct MatchedGroup {
  Basis basis = Basis::Z;
  std::int64_t index = 0;
  std::vector<std::uint8_t> a_bits;   // Alice's bits, per stream
  std::vector<std::uint8_t> b_bits;   // Bobs' bits, per stream
  std::vector<std::uint8_t> c_bits;   // Z only: Alice's announcements a1 ^ ai
  std::vector<std::uint8_t> b_prime;  // Z only: Bobs' corrected bits ci ^ bi
  std::uint8_t a_prime_x = 0;         // X only: Alice's parity bit
  bool processed = false;
};

// Sequential matching: group j takes the j-th valid event of every stream in
// the requested basis. Group count = min over streams; surplus events are
// discarded.
std::vector<MatchedGroup> match_groups(std::span<const SiftedStream> streams,
                                       Basis basis);

// Z pipeline: c_i = a_1 ^ a_i, b'_i = c_i ^ b_i. Throws on basis mismatch.
void process_z(MatchedGroup& group);

// X pipeline: a' = a_1 ^ ... ^ a_{n-1}. Throws on basis mismatch.
void process_x(MatchedGroup& group);

struct ErrorTally {
  std::int64_t groups_z = 0;
  std::int64_t groups_x = 0;
  std::int64_t errors_x = 0;        // X groups where a' != b_1 ^ ... ^ b_{n-1}
  std::int64_t errors_z_any = 0;    // Z groups where some b'_i != a_1
  std::vector<std::int64_t> errors_z_marginal;  // per stream: b'_i != a_1

  double error_x() const;
  double error_z() const;
  double marginal_z(int stream) const;
};

// Empirical error rates over processed groups (both bases may be present).
// Throws std::invalid_argument on an empty group list.
ErrorTally tally_errors(std::span<const MatchedGroup> groups);

// Match + process + tally both bases without materializing the group list;
// same pipeline, constant memory. Used by the simulation hot path.
ErrorTally tally_matched(std::span<const SiftedStream> streams);

}  // namespace qcka
