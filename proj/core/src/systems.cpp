#include "ipr/systems.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "checked_arith.hpp"

namespace ipr {

using detail::checked_add;
using detail::checked_mul;

namespace {

constexpr std::size_t kLengthLimit = 16;

void require_positive(const IntSeq& x) {
    for (long long e : x)
        if (e < 1) throw std::invalid_argument("sequence entries must be >= 1");
}

void require_short(const IntSeq& x, bool ignore_limit, const char* who) {
    if (!ignore_limit && x.size() > kLengthLimit)
        throw std::invalid_argument(std::string(who) +
                                    ": sequence longer than 16; pass ignore_length_limit to force");
}

// Separated-blocks walk shared by mt_set and pmt_set.  For each slot,
// chooses a nonempty F as max element plus any subset of the gap since the
// previous block, accumulating sum or product per block.
template <bool Product>
struct BlockWalk {
    const IntSeq& a;
    const IntSeq& x;
    std::set<long long>& out;

    void slot(std::size_t i, std::size_t start, long long acc) {
        for (std::size_t first = start; first < x.size(); ++first)
            block(i, first, first + 1, x[first], acc);
    }

    // F currently holds indices in [first, next); its reduction is val.
    void block(std::size_t i, std::size_t first, std::size_t next, long long val, long long acc) {
        long long term = checked_add(acc, checked_mul(a[i], val));
        if (i + 1 == a.size()) {
            out.insert(term);
        } else {
            slot(i + 1, next, term);
        }
        for (std::size_t grow = next; grow < x.size(); ++grow) {
            long long v2 = Product ? checked_mul(val, x[grow]) : checked_add(val, x[grow]);
            block(i, first, grow + 1, v2, acc);
        }
    }
};

}  // namespace

CoefficientSeq::CoefficientSeq(IntSeq entries) : a(std::move(entries)) {
    if (a.empty()) throw std::invalid_argument("CoefficientSeq: empty");
    for (long long e : a)
        if (e < 1) throw std::invalid_argument("CoefficientSeq: entries must be >= 1");
}

bool CoefficientSeq::compressed() const {
    return is_compressed(a);
}

BlockSystem::BlockSystem(std::vector<std::vector<std::size_t>> b) : blocks(std::move(b)) {
    if (blocks.empty()) throw std::invalid_argument("BlockSystem: no blocks");
    for (std::size_t t = 0; t < blocks.size(); ++t) {
        const auto& h = blocks[t];
        if (h.empty()) throw std::invalid_argument("BlockSystem: empty block");
        if (!std::is_sorted(h.begin(), h.end()) ||
            std::adjacent_find(h.begin(), h.end()) != h.end())
            throw std::invalid_argument("BlockSystem: block not strictly increasing");
        if (h.front() < 1) throw std::invalid_argument("BlockSystem: indices are 1-based");
        if (t > 0 && blocks[t - 1].back() >= h.front())
            throw std::invalid_argument("BlockSystem: blocks must be separated (max H_t < min H_{t+1})");
    }
}

std::vector<long long> wmt_set(const CoefficientSeq& a, const IntSeq& x) {
    require_positive(x);
    const std::size_t m = a.size();
    if (x.size() < m) return {};
    std::set<long long> out;
    // Index tuples t_0 < ... < t_{m-1}.
    auto rec = [&](auto&& self, std::size_t i, std::size_t start, long long acc) -> void {
        if (i == m) {
            out.insert(acc);
            return;
        }
        for (std::size_t j = start; j + (m - i) <= x.size(); ++j)
            self(self, i + 1, j + 1, checked_add(acc, checked_mul(a.a[i], x[j])));
    };
    rec(rec, 0, 0, 0);
    return {out.begin(), out.end()};
}

std::vector<long long> mt_set(const CoefficientSeq& a, const IntSeq& x, bool ignore_length_limit) {
    if (!a.compressed()) throw std::invalid_argument("mt_set: coefficient sequence must be compressed");
    require_positive(x);
    require_short(x, ignore_length_limit, "mt_set");
    if (x.size() < a.size()) return {};
    std::set<long long> out;
    BlockWalk<false> walk{a.a, x, out};
    walk.slot(0, 0, 0);
    return {out.begin(), out.end()};
}

std::vector<long long> pmt_set(const CoefficientSeq& a, const IntSeq& x, bool ignore_length_limit) {
    require_positive(x);
    require_short(x, ignore_length_limit, "pmt_set");
    if (x.size() < a.size()) return {};
    std::set<long long> out;
    BlockWalk<true> walk{a.a, x, out};
    walk.slot(0, 0, 0);
    return {out.begin(), out.end()};
}

std::vector<long long> fs_set(const IntSeq& x, bool ignore_length_limit) {
    return mt_set(CoefficientSeq({1}), x, ignore_length_limit);
}

std::vector<long long> fp_set(const IntSeq& x, bool ignore_length_limit) {
    return pmt_set(CoefficientSeq({1}), x, ignore_length_limit);
}

namespace {

IntSeq subsystem(const IntSeq& x, const BlockSystem& blocks, bool product) {
    require_positive(x);
    IntSeq y;
    y.reserve(blocks.size());
    for (const auto& h : blocks.blocks) {
        if (h.back() > x.size())
            throw std::invalid_argument("subsystem: block index beyond sequence length");
        long long acc = product ? 1 : 0;
        for (std::size_t i : h)
            acc = product ? checked_mul(acc, x[i - 1]) : checked_add(acc, x[i - 1]);
        y.push_back(acc);
    }
    return y;
}

}  // namespace

IntSeq sum_subsystem(const IntSeq& x, const BlockSystem& blocks) {
    return subsystem(x, blocks, false);
}

IntSeq product_subsystem(const IntSeq& x, const BlockSystem& blocks) {
    return subsystem(x, blocks, true);
}

}  // namespace ipr
