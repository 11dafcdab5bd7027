#include "liar/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "liar/game.hpp"

namespace liar {

namespace {

constexpr char kMagic[8] = {'L', 'I', 'A', 'R', 'M', 'E', 'M', 'O'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put_le(std::ostream& out, T v) {
    unsigned char bytes[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
    unsigned char bytes[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
        throw GameError(ErrorCode::ParseError, "truncated oracle memo file");
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(bytes[i]) << (8 * i);
    return v;
}

}  // namespace

Oracle::Oracle(OracleLimits limits) : limits_(limits) {
    if (limits_.max_j > kMaxQuestions)
        throw GameError(ErrorCode::InvalidArgument, "oracle max_j above supported cap");
    if (limits_.max_candidates >= (std::uint64_t{1} << 24))
        throw GameError(ErrorCode::InvalidArgument, "oracle max_candidates must be below 2^24");
}

bool Oracle::winnable(std::uint64_t a, std::uint64_t b, unsigned j) {
    if (a + b > limits_.max_candidates || j > limits_.max_j)
        throw GameError(ErrorCode::LimitExceeded,
                        "oracle state (" + std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(j) + ") beyond configured limits");
    return solve(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), j);
}

bool Oracle::solve(std::uint32_t a, std::uint32_t b, std::uint32_t j) {
    if (a + b <= 1) return true;
    if (j == 0) return false;
    // volume necessity: (j+1)a + b <= 2^j
    if (std::uint64_t{j + 1} * a + b > (std::uint64_t{1} << j)) return false;

    const auto key = OracleKey{a, b, j}.packed();
    {
        std::shared_lock lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }

    // Swapping (i, k) with (a-i, b-k) swaps the children, so i <= a/2 covers
    // every split. Balanced splits are tried first.
    const std::int64_t half = std::int64_t{1} << (j - 1);
    bool result = false;
    for (std::int64_t i = a / 2; i >= 0 && !result; --i) {
        // child weights with j-1 left: w_yes = j*i + k + a - i, w_no = j(a-i) + b - k + i
        const std::int64_t k_hi = std::min<std::int64_t>(b, half - std::int64_t{j - 1} * i - a);
        const std::int64_t k_lo = std::max<std::int64_t>(0, std::int64_t{j} * (a - i) + b + i - half);
        if (k_lo > k_hi) continue;
        const std::int64_t mid = std::clamp<std::int64_t>(b / 2, k_lo, k_hi);
        for (std::int64_t d = 0; !result; ++d) {
            const std::int64_t lo = mid - d, hi = mid + d + 1;
            if (lo < k_lo && hi > k_hi) break;
            for (std::int64_t k : {lo, hi}) {
                if (k < k_lo || k > k_hi) continue;
                const auto ii = static_cast<std::uint32_t>(i);
                const auto kk = static_cast<std::uint32_t>(k);
                if (solve(ii, kk + a - ii, j - 1) && solve(a - ii, b - kk + ii, j - 1)) {
                    result = true;
                    break;
                }
            }
        }
    }

    std::unique_lock lock(mutex_);
    memo_.emplace(key, result);
    return result;
}

unsigned Oracle::q1(std::uint64_t n) {
    if (n == 0) throw GameError(ErrorCode::InvalidArgument, "n must be at least 1");
    for (unsigned j = 0;; ++j)
        if (winnable(n, 0, j)) return j;
}

std::size_t Oracle::memo_size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
}

void Oracle::save(const std::filesystem::path& path) const {
    std::vector<std::pair<std::uint64_t, bool>> entries;
    {
        std::shared_lock lock(mutex_);
        entries.assign(memo_.begin(), memo_.end());
    }
    std::sort(entries.begin(), entries.end());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw GameError(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out.write(kMagic, sizeof kMagic);
    put_le<std::uint32_t>(out, kVersion);
    put_le<std::uint64_t>(out, entries.size());
    for (const auto& [key, value] : entries) {
        put_le<std::uint64_t>(out, key);
        put_le<std::uint8_t>(out, value ? 1 : 0);
    }
}

std::size_t Oracle::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GameError(ErrorCode::InvalidArgument, "cannot read " + path.string());
    char magic[8];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw GameError(ErrorCode::ParseError, "not an oracle memo file: " + path.string());
    if (get_le<std::uint32_t>(in) != kVersion)
        throw GameError(ErrorCode::ParseError, "unsupported oracle memo version");
    const auto count = get_le<std::uint64_t>(in);
    std::vector<std::pair<std::uint64_t, bool>> entries;
    entries.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        auto key = get_le<std::uint64_t>(in);
        auto value = get_le<std::uint8_t>(in);
        if (value > 1) throw GameError(ErrorCode::ParseError, "corrupt oracle memo entry");
        entries.emplace_back(key, value == 1);
    }
    std::unique_lock lock(mutex_);
    for (const auto& [key, value] : entries) memo_.emplace(key, value);
    return entries.size();
}

std::vector<unsigned> oracle_table(Oracle& oracle, std::uint64_t n_max, unsigned threads) {
    std::vector<unsigned> out(n_max);
    std::atomic<std::uint64_t> next{1};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (auto n = next++; n <= n_max; n = next++) out[n - 1] = oracle.q1(n);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n_max + 1;
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace liar
