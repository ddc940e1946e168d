#include "ipr/seq.hpp"

namespace ipr {

IntSeq delete_zeros(const IntSeq& x) {
    IntSeq out;
    out.reserve(x.size());
    for (long long e : x)
        if (e != 0) out.push_back(e);
    return out;
}

IntSeq compress(const IntSeq& x) {
    IntSeq out;
    out.reserve(x.size());
    for (long long e : x) {
        if (e == 0) continue;
        if (out.empty() || out.back() != e) out.push_back(e);
    }
    return out;
}

bool is_compressed(const IntSeq& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) return false;
        if (i > 0 && x[i] == x[i - 1]) return false;
    }
    return true;
}

}  // namespace ipr
