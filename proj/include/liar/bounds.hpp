#pragma once

#include <cstdint>
#include <string>

namespace liar {

enum class BoundKind { PelcExact, Theorem2, VolumeLower };

struct BoundResult {
    std::uint64_t n = 0;
    unsigned q = 0;
    unsigned ell = 0;  // binary-search length; meaningful for Theorem2 only
    BoundKind kind = BoundKind::PelcExact;
};

// All comparisons below are exact integer cross-multiplications.

/// Pelc's q1(n): least q with n(q+1) <= 2^q for even n, and
/// n(q+1) <= 2^q - q + 1 for odd n.
unsigned pelc_q1(std::uint64_t n);
BoundResult pelc_bound(std::uint64_t n);

/// Whether q satisfies the parity-appropriate Pelc inequality for n.
bool pelc_condition(std::uint64_t n, unsigned q);

/// The constructive strategy's budget: ell = ceil(log2 n), q least with
/// 2^ell (q+1) <= 2^q.
BoundResult theorem2_bound(std::uint64_t n);

/// n(q+1) <= 2^q. When false no questioner wins in q questions.
bool volume_winnable(std::uint64_t n, unsigned q);

/// Largest n with n(j+1) <= 2^j, i.e. floor(2^j / (j+1)).
std::uint64_t max_volume_n(unsigned j);

/// theorem2_bound(n).q - pelc_q1(n); n >= 2.
int gap(std::uint64_t n);

/// Delimited table with columns n, pelc_q1, theorem2_q, ell, gap.
std::string bound_table(std::uint64_t from, std::uint64_t to, char delim = ',');

}  // namespace liar
