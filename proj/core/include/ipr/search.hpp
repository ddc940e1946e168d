#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ipr/matrix.hpp"

namespace ipr {

// r-coloring of {1..domain}; assignment[i] is the color of i+1, in [0, colors).
struct Coloring {
    long long domain = 0;
    int colors = 0;
    std::vector<int> assignment;

    bool valid() const;
    int color_of(long long n) const { return assignment[static_cast<std::size_t>(n - 1)]; }
};

// File format: one line "N r", then N color values in 0..r-1.
Coloring parse_coloring(std::istream& in);
Coloring load_coloring_file(const std::string& path);
std::string render_coloring(const Coloring& c);

// One candidate monochromatic constraint: the distinct values of A*x for
// some witness x, all inside [1..N].
struct ImageInstance {
    std::vector<long long> values;  // sorted, distinct
    IntSeq witness;
};

struct ImageEnumeration {
    std::vector<ImageInstance> images;  // minimal value sets, sorted by (size, values)
    bool complete = true;               // false iff the node budget ran out
    unsigned long long nodes = 0;
};

inline constexpr unsigned long long kDefaultSearchNodes = 50'000'000;

// Every x in [1..xmax]^v whose image lands entirely in [1..N] with integer
// values contributes its value set; duplicates collapse to the first
// witness and value sets containing another value set are dropped
// (a superset constraint is implied by its subset).
ImageEnumeration enumerate_images(const Matrix& a, long long n, long long xmax,
                                  unsigned long long node_budget = kDefaultSearchNodes);

// Smallest xmax that already covers every candidate: no row value fits in
// [1..N] once some x_j exceeds it (row sums are positive for the matrices
// this is used with); in general ceil(N / min positive row sum), at least N.
long long default_xmax(const Matrix& a, long long n);

// Exhaustive r-coloring search over the image constraints.  Returns a
// coloring under which no image is monochromatic, or nullopt when every
// r-coloring of [1..N] makes some image monochromatic.  Deterministic for
// any thread count: parallel blocks race but the lowest block wins.
std::optional<Coloring> find_avoiding_coloring(const std::vector<ImageInstance>& images,
                                               long long n, int colors, int threads = 1);

enum class VerdictKind { forced, avoidable, inconclusive };
enum class InconclusiveReason { no_images, budget_exhausted };

// Result of the finite check at a fixed (N, r, xmax).
//
// Direction of evidence: `forced` (every r-coloring of [1..N] hits a
// monochromatic image) is consistent with the matrix being image partition
// regular and, over growing N, is the only way this engine supports it.
// `avoidable` only says the obstruction has not appeared by this N; it
// refutes nothing about the full (infinite) property.  `forced` is sound
// even when the image enumeration was truncated: extra constraints could
// only shrink the set of avoiding colorings.  `avoidable` requires the
// enumeration to have been complete.
struct Verdict {
    VerdictKind kind = VerdictKind::inconclusive;
    std::size_t images_used = 0;                      // forced
    std::optional<Coloring> coloring;                 // avoidable
    std::optional<InconclusiveReason> reason;         // inconclusive
    long long n = 0;                                  // the N this verdict speaks about
    bool enumeration_complete = true;
};

struct SearchOptions {
    unsigned long long node_budget = kDefaultSearchNodes;
    int threads = 1;
};

// xmax <= 0 selects default_xmax(a, n).
Verdict verify_ipr_finite(const Matrix& a, long long n, int colors, long long xmax = 0,
                          const SearchOptions& opts = {});

// Runs verify_ipr_finite for N = start_n, start_n+1, ..., max_n and stops
// at the first forced verdict; otherwise returns the verdict at max_n.
// xmax <= 0 tracks the per-N default.
Verdict verify_ipr_deepening(const Matrix& a, long long start_n, long long max_n, int colors,
                             long long xmax = 0, const SearchOptions& opts = {});

// First x in [1..xmax]^v (lexicographic) whose image is monochromatic under
// the coloring, together with the color.  xmax <= 0 selects the default.
std::optional<std::pair<IntSeq, int>> find_monochromatic_witness(const Matrix& a,
                                                                 const Coloring& coloring,
                                                                 long long xmax = 0);

// DIMACS CNF whose satisfying assignments are exactly the avoiding
// r-colorings; variable for value n taking color c is (n-1)*r + c + 1.
std::string export_cnf(const std::vector<ImageInstance>& images, long long n, int colors);

// Reads a model (one int per variable, sign = phase) back into a coloring.
std::optional<Coloring> coloring_from_model(const std::vector<int>& literals, long long n,
                                            int colors);

}  // namespace ipr
