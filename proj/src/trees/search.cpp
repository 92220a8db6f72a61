#include "cert/order_tree.hpp"

#include <cmath>
#include <deque>

namespace cert {

namespace {

Mat2d mul(const Mat2d& x, const Mat2d& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Mat2d inv(const Mat2d& x) { return {x[3], -x[1], -x[2], x[0]}; }

}  // namespace

std::vector<Mat2d> float_matrices(const ApproxHolonomy& rho) {
    std::vector<Mat2d> out;
    for (const Matrix2& m : rho.images) {
        Mat2d d;
        const Box* e[4] = {&m.a(), &m.b(), &m.c(), &m.d()};
        for (int i = 0; i < 4; ++i) d[i] = {e[i]->re.mid_double(), e[i]->im.mid_double()};
        out.push_back(d);
    }
    return out;
}

size_t CayleyBall::KeyHash::operator()(const Key& k) const {
    size_t h = 1469598103934665603ull;
    for (long long x : k) h = (h ^ static_cast<size_t>(x)) * 1099511628211ull;
    return h;
}

// first real component clearly away from 0 is made positive, then all eight
// are snapped to the tolerance grid
CayleyBall::Key CayleyBall::key(const Mat2d& m) const {
    std::array<double, 8> v{};
    for (int i = 0; i < 4; ++i) v[2 * i] = m[i].real(), v[2 * i + 1] = m[i].imag();
    double s = 1;
    for (double x : v)
        if (std::abs(x) > 1e-4) {
            s = x < 0 ? -1 : 1;
            break;
        }
    Key k;
    for (int i = 0; i < 8; ++i) k[i] = std::llround(s * v[i] / tol_);
    return k;
}

CayleyBall::CayleyBall(const std::vector<Mat2d>& gens, int radius, size_t max_elements, double tolerance)
    : tol_(tolerance) {
    if (gens.empty()) throw std::invalid_argument("ball needs at least one generator");
    std::vector<Word> words{Word{}};
    std::vector<Mat2d> mats{Mat2d{1, 0, 0, 1}};
    std::unordered_map<Key, int, KeyHash> seen{{key(mats[0]), 0}};
    size_t layer_begin = 0;
    for (int r = 0; r < radius && words.size() < max_elements; ++r) {
        size_t layer_end = words.size();
        for (size_t i = layer_begin; i < layer_end && words.size() < max_elements; ++i)
            for (int g = 0; g < static_cast<int>(gens.size()) && words.size() < max_elements; ++g)
                for (bool back : {false, true}) {
                    int l = letter(g, back);
                    if (!words[i].empty() && words[i].letters.back() == -l) continue;
                    Mat2d m = mul(mats[i], back ? inv(gens[g]) : gens[g]);
                    if (!seen.emplace(key(m), static_cast<int>(words.size())).second) continue;
                    Word w = words[i];
                    w.letters.push_back(l);
                    words.push_back(std::move(w));
                    mats.push_back(m);
                    if (words.size() >= max_elements) break;
                }
        layer_begin = layer_end;
    }
    // keep only elements whose inverse made it in (BFS order is preserved)
    for (size_t i = 0; i < words.size(); ++i) {
        if (!seen.count(key(inv(mats[i])))) continue;
        index_.emplace(key(mats[i]), static_cast<int>(words_.size()));
        words_.push_back(words[i]);
        mats_.push_back(mats[i]);
    }
    inv_.resize(words_.size());
    for (size_t i = 0; i < words_.size(); ++i) {
        auto j = find(inv(mats_[i]));
        if (!j) throw std::logic_error("ball lost an inverse");
        inv_[i] = *j;
    }
}

std::optional<int> CayleyBall::find(const Mat2d& m) const {
    auto it = index_.find(key(m));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> CayleyBall::product(int i, int j) const { return find(mul(mats_[i], mats_[j])); }

std::vector<int> ConeSearchState::expand(int element) const {
    std::vector<int> out;
    std::vector<int> stack{element};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        const Reason& r = why.at(x);
        if (r.edge >= 0) {
            out.push_back(r.edge);
        } else {
            stack.push_back(r.right);
            stack.push_back(r.left);
        }
    }
    return out;
}

bool assume_positive(ConeSearchState& s, const CayleyBall& ball, int element, int edge) {
    if (s.contradiction) return false;
    auto concat = [&](std::initializer_list<int> parts) {
        std::vector<int> out;
        for (int p : parts) {
            auto e = s.expand(p);
            out.insert(out.end(), e.begin(), e.end());
        }
        return out;
    };
    if (element == ball.identity()) {
        s.contradiction = std::vector<int>{edge};
        return false;
    }
    if (s.sign[element] > 0) return true;
    if (s.sign[element] < 0) {
        s.why[element] = {edge, -1, -1};
        std::vector<int> c{edge};
        auto rest = s.expand(ball.inverse(element));
        c.insert(c.end(), rest.begin(), rest.end());
        s.contradiction = c;
        return false;
    }

    std::deque<int> queue;
    auto add = [&](int x, ConeSearchState::Reason r) {
        s.sign[x] = 1;
        s.why[x] = r;
        if (ball.inverse(x) != x) s.sign[ball.inverse(x)] = -1;
        queue.push_back(x);
    };
    add(element, {edge, -1, -1});
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        s.positive.push_back(x);
        // products with every positive so far, on both sides (x*x included)
        const size_t n = s.positive.size();
        for (size_t k = 0; k < n; ++k) {
            int y = s.positive[k];
            for (auto [l, r] : {std::pair{x, y}, std::pair{y, x}}) {
                auto z = ball.product(l, r);
                if (!z) continue;
                if (*z == ball.identity()) {
                    s.contradiction = concat({l, r});
                    return false;
                }
                if (s.sign[*z] > 0) continue;
                if (s.sign[*z] < 0) {
                    s.contradiction = concat({l, r, ball.inverse(*z)});
                    return false;
                }
                add(*z, {-1, l, r});
                if (ball.inverse(*z) == *z) {
                    s.contradiction = concat({*z, *z});
                    return false;
                }
            }
        }
    }
    return true;
}

namespace {

struct TreeBuilder {
    const CayleyBall& ball;
    const FindParams& params;
    NonorderingTree& tree;
    long nodes = 0;

    int new_vertex() { return tree.vertex_count++; }

    int new_edge(int from, int to, Word label) {
        tree.edges.push_back({from, to, std::move(label)});
        return static_cast<int>(tree.edges.size()) - 1;
    }

    // place element on a fresh edge below v; recurse or close off a leaf
    void branch(int v, const ConeSearchState& s, int element, Word label) {
        int child = new_vertex();
        int e = new_edge(v, child, std::move(label));
        ConeSearchState c = s;
        if (!assume_positive(c, ball, element, e))
            tree.leaves.push_back({child, *c.contradiction});
        else
            grow(child, c);
    }

    void grow(int v, const ConeSearchState& s) {
        if (++nodes > params.node_limit) throw SearchTimeout();
        int pick = -1;
        for (size_t i = 1; i < ball.size(); ++i)
            if (s.sign[i] == 0) {
                pick = static_cast<int>(i);
                break;
            }
        if (pick < 0) throw BallTooSmall();
        const Word& w = ball.word(pick);
        branch(v, s, pick, w);
        branch(v, s, ball.inverse(pick), inverse(w));
    }
};

}  // namespace

NonorderingTree find_tree(const Presentation& pres, const std::vector<Mat2d>& float_rep, const FindParams& params,
                          FindStats* stats) {
    if (static_cast<int>(float_rep.size()) != pres.rank())
        throw std::invalid_argument("one matrix per generator is needed");
    CayleyBall ball(float_rep, params.radius, params.max_elements, params.tolerance);
    if (stats) stats->ball_size = ball.size();
    auto first = ball.find(float_rep.front());
    if (!first || *first == ball.identity()) throw BallTooSmall();

    NonorderingTree tree;
    tree.presentation = pres;
    tree.root = 0;
    tree.vertex_count = 1;
    TreeBuilder b{ball, params, tree};
    // by symmetry of P and its inverse, the first generator may be taken positive
    b.branch(0, ConeSearchState(ball.size()), *first, Word{{letter(0)}});
    if (stats) stats->nodes = b.nodes;
    return tree;
}

}  // namespace cert
