#pragma once

#include <cstdint>
#include <filesystem>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace liar {

struct OracleKey {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t j = 0;

    std::uint64_t packed() const {
        return (std::uint64_t{a} << 40) | (std::uint64_t{b} << 16) | j;
    }
};

struct OracleLimits {
    std::uint64_t max_candidates = 256;  // a + b
    unsigned max_j = 24;
};

/// Exact minimax over aggregate states (a, b, j). A question is described
/// by how many consistent (i) and penny (k) candidates it contains; the
/// children are (i, k+a-i) and (a-i, b-k+i).
///
/// Memo reads take a shared lock and insertions an exclusive one, so one
/// Oracle may be shared between threads. Entries are idempotent.
class Oracle {
public:
    explicit Oracle(OracleLimits limits = {});

    bool winnable(std::uint64_t a, std::uint64_t b, unsigned j);

    /// Least j with winnable(n, 0, j).
    unsigned q1(std::uint64_t n);

    std::size_t memo_size() const;

    /// Binary memo file: "LIARMEMO" magic, u32 version, u64 count, then
    /// count x (u64 packed key, u8 value), little endian.
    void save(const std::filesystem::path& path) const;
    /// Merges entries from `path`; returns the number read.
    std::size_t load(const std::filesystem::path& path);

    const OracleLimits& limits() const { return limits_; }

private:
    bool solve(std::uint32_t a, std::uint32_t b, std::uint32_t j);

    OracleLimits limits_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::uint64_t, bool> memo_;
};

/// oracle_q1(n) for n in 1..n_max, computed on `threads` workers sharing
/// one memo. The result does not depend on the thread count.
std::vector<unsigned> oracle_table(Oracle& oracle, std::uint64_t n_max, unsigned threads = 1);

}  // namespace liar
