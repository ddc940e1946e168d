#pragma once

#include <vector>

namespace ipr {

using IntSeq = std::vector<long long>;

// Deletes every zero entry, keeping order.
IntSeq delete_zeros(const IntSeq& x);

// Deletes zeros, then collapses maximal runs of equal adjacent entries
// to a single entry.  compress({1,0,2,2,3}) == {1,2,3}.
IntSeq compress(const IntSeq& x);

// True iff x == compress(x): no zeros, no equal adjacent entries.
bool is_compressed(const IntSeq& x);

}  // namespace ipr
