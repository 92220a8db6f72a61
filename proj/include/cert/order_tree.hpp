#pragma once

#include "cert/holonomy.hpp"

#include <complex>
#include <cstdint>
#include <unordered_map>

namespace cert {

struct TreeParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BallTooSmall : std::runtime_error {
    BallTooSmall() : std::runtime_error("the ball admits a consistent positive cone; no tree at this radius") {}
};
struct SearchTimeout : std::runtime_error {
    SearchTimeout() : std::runtime_error("tree search exceeded its node budget") {}
};

struct TreeEdge {
    int from = 0, to = 0;
    Word label;
    bool operator==(const TreeEdge&) const = default;
};

// a non-root leaf and the positive product of root-path edge labels it claims is 1
struct TreeLeaf {
    int vertex = 0;
    std::vector<int> product;  // edge ids
    bool operator==(const TreeLeaf&) const = default;
};

struct NonorderingTree {
    Presentation presentation;
    int root = 0;
    int vertex_count = 0;
    std::vector<TreeEdge> edges;
    std::vector<TreeLeaf> leaves;
};

bool same_tree(const NonorderingTree& a, const NonorderingTree& b);

json tree_to_json(const NonorderingTree& t);
NonorderingTree tree_from_json(const json& j);
// parses text; syntax errors report the byte offset
NonorderingTree parse_tree(const std::string& text);

// Structural problems, in the order they are checked; empty when well formed.
std::optional<std::string> tree_structure_error(const NonorderingTree& t);

// Edge ids on the path from the root to a vertex, root first.
std::vector<int> root_path(const NonorderingTree& t, int vertex);
// leaf word with edge labels substituted, freely reduced
Word expand_leaf(const NonorderingTree& t, const TreeLeaf& leaf);

enum class TreeVerdict { verified, refuted, unknown };
std::string to_string(TreeVerdict v);

struct DecidedWord {
    Word word;
    LadderVerdict result;
};

struct TreeReport {
    TreeVerdict verdict = TreeVerdict::unknown;
    std::string reason;
    long words_decided = 0;
    mpfr_prec_t max_precision_used = 0;
    std::optional<std::pair<int, int>> jorgensen_pair;
    // edge labels then expanded leaves, in the order they were decided
    std::vector<DecidedWord> decisions;
};

struct TreeCheckOptions {
    std::vector<mpfr_prec_t> ladder = default_ladder();
    std::optional<std::pair<int, int>> jorgensen_pair;
};

TreeReport verify_tree(const NonorderingTree& t, const HolonomyAt& rho_at, const TreeCheckOptions& opt = {});

// ---- heuristic search with floating-point matrices ----

using Mat2d = std::array<std::complex<double>, 4>;

std::vector<Mat2d> float_matrices(const ApproxHolonomy& rho);

// Ball of radius r in the Cayley graph, elements identified when their
// matrices agree up to sign within the tolerance.
class CayleyBall {
public:
    CayleyBall(const std::vector<Mat2d>& gens, int radius, size_t max_elements, double tolerance = 1e-6);
    size_t size() const { return words_.size(); }
    const Word& word(int i) const { return words_[i]; }
    const Mat2d& matrix(int i) const { return mats_[i]; }
    int inverse(int i) const { return inv_[i]; }
    int identity() const { return 0; }
    std::optional<int> find(const Mat2d& m) const;
    std::optional<int> product(int i, int j) const;

private:
    using Key = std::array<long long, 8>;
    struct KeyHash {
        size_t operator()(const Key& k) const;
    };
    Key key(const Mat2d& m) const;
    double tol_;
    std::vector<Word> words_;
    std::vector<Mat2d> mats_;
    std::vector<int> inv_;
    std::unordered_map<Key, int, KeyHash> index_;
};

// Partial positive cone on a ball. Every positive element remembers how it
// was forced: an assumption (edge id) or the product of two positives.
struct ConeSearchState {
    struct Reason {
        int edge = -1;       // assumption when >= 0
        int left = -1, right = -1;
    };
    std::vector<int8_t> sign;  // +1: in P, -1: inverse in P, 0: free
    std::vector<Reason> why;
    std::vector<int> positive;
    // assumptions (edge ids) whose product is 1, once found
    std::optional<std::vector<int>> contradiction;

    explicit ConeSearchState(size_t n) : sign(n, 0), why(n) {}
    std::vector<int> expand(int element) const;
};

// Adds element to P with the given edge as its reason, closes P under
// products inside the ball, and stops at the first contradiction.
// Returns false when a contradiction was found.
bool assume_positive(ConeSearchState& s, const CayleyBall& ball, int element, int edge);

struct FindParams {
    int radius = 6;
    size_t max_elements = 6000;
    long node_limit = 20000;
    double tolerance = 1e-6;
};

struct FindStats {
    size_t ball_size = 0;
    long nodes = 0;
};

NonorderingTree find_tree(const Presentation& pres, const std::vector<Mat2d>& float_rep, const FindParams& params = {},
                          FindStats* stats = nullptr);

}  // namespace cert
