#include "cert/foliar.hpp"

#include <numeric>

namespace cert {

EdgeOrientation orientation_from_json(const json& j, int edge_count) {
    const json& d = j.is_object() ? j.at("directions") : j;
    if (!d.is_array() || static_cast<int>(d.size()) != edge_count)
        throw std::invalid_argument("orientation must give one direction per edge class");
    EdgeOrientation mu;
    for (const json& x : d) {
        if (x.is_boolean())
            mu.forward.push_back(x.get<bool>());
        else if (x.is_number_integer() && (x.get<int>() == 1 || x.get<int>() == -1))
            mu.forward.push_back(x.get<int>() == 1);
        else
            throw std::invalid_argument("edge direction must be +1, -1 or a boolean");
    }
    return mu;
}

json orientation_to_json(const EdgeOrientation& mu) {
    json d = json::array();
    for (bool f : mu.forward) d.push_back(f ? 1 : -1);
    return {{"directions", d}};
}

bool points_from(const Triangulation& T, const EdgeOrientation& mu, int tet, int i, int j) {
    int e = edge_index(i, j);
    bool low_to_high = mu.forward[T.edge_class(tet, e)] == (T.edge_slot_sign(tet, e) > 0);
    return i < j ? low_to_high : !low_to_high;
}

namespace {

void check_size(const Triangulation& T, const EdgeOrientation& mu) {
    if (static_cast<int>(mu.forward.size()) != T.edge_count())
        throw std::invalid_argument("orientation size differs from the edge class count");
}

// in-degree of each vertex inside one tetrahedron
std::array<int, 4> ranks(const Triangulation& T, const EdgeOrientation& mu, int t) {
    std::array<int, 4> r{0, 0, 0, 0};
    for (auto [i, j] : edge_vertices) ++r[points_from(T, mu, t, i, j) ? j : i];
    return r;
}

// literal "slot (i, j) of t points i -> j"
int direction_literal(const Triangulation& T, int t, int i, int j) {
    int e = edge_index(i, j);
    int var = T.edge_class(t, e) + 1;
    bool along = (T.edge_slot_sign(t, e) > 0) == (i < j);
    return along ? var : -var;
}

// Exhaustive all-solutions search with unit propagation.
class AllSolutions {
public:
    AllSolutions(int vars, std::vector<Clause> clauses) : clauses_(std::move(clauses)), occurs_(vars), value_(vars, -1) {
        for (size_t c = 0; c < clauses_.size(); ++c)
            for (int l : clauses_[c]) {
                auto& o = occurs_[std::abs(l) - 1];
                if (o.empty() || o.back() != c) o.push_back(c);
            }
    }

    // enumerate with variable 0 fixed true; emit returns false to stop
    void run(const std::function<bool(const std::vector<bool>&)>& emit) {
        emit_ = &emit;
        if (value_.empty()) return;
        assign(0, true);
        if (propagate(0)) search();
    }

private:
    std::vector<Clause> clauses_;
    std::vector<std::vector<size_t>> occurs_;
    std::vector<int> value_;
    std::vector<int> trail_;
    const std::function<bool(const std::vector<bool>&)>* emit_ = nullptr;
    bool stopped_ = false;

    int lit_value(int l) const {
        int v = value_[std::abs(l) - 1];
        if (v < 0) return -1;
        return (l > 0) == (v == 1) ? 1 : 0;
    }
    void assign(int var, bool val) {
        value_[var] = val ? 1 : 0;
        trail_.push_back(var);
    }
    void undo(size_t mark) {
        while (trail_.size() > mark) {
            value_[trail_.back()] = -1;
            trail_.pop_back();
        }
    }
    bool propagate(size_t from) {
        for (size_t k = from; k < trail_.size(); ++k)
            for (size_t c : occurs_[trail_[k]]) {
                int unit = 0;
                bool satisfied = false, several = false;
                for (int l : clauses_[c]) {
                    int v = lit_value(l);
                    if (v == 1) satisfied = true;
                    if (v == -1) {
                        if (unit != 0 && unit != l) several = true;
                        unit = l;
                    }
                }
                if (satisfied || several) continue;
                if (unit == 0) return false;
                assign(std::abs(unit) - 1, unit > 0);
            }
        return true;
    }
    void search() {
        int var = -1;
        for (size_t v = 0; v < value_.size(); ++v)
            if (value_[v] < 0) {
                var = static_cast<int>(v);
                break;
            }
        if (var < 0) {
            std::vector<bool> sol(value_.size());
            for (size_t v = 0; v < value_.size(); ++v) sol[v] = value_[v] == 1;
            if (!(*emit_)(sol)) stopped_ = true;
            return;
        }
        for (bool val : {true, false}) {
            size_t mark = trail_.size();
            assign(var, val);
            if (propagate(mark)) search();
            undo(mark);
            if (stopped_) return;
        }
    }
};

}  // namespace

std::vector<Clause> acyclic_cnf(const Triangulation& T) {
    std::vector<Clause> out;
    for (int f = 0; f < T.face_count(); ++f) {
        FaceSide s = T.face_sides(f)[0];
        std::array<int, 3> v{};
        int k = 0;
        for (int w = 0; w < 4; ++w)
            if (w != s.face) v[k++] = w;
        // the cycle v0 -> v1 -> v2 -> v0 makes all three literals true
        int l1 = direction_literal(T, s.tet, v[0], v[1]);
        int l2 = direction_literal(T, s.tet, v[1], v[2]);
        int l3 = -direction_literal(T, s.tet, v[0], v[2]);
        out.push_back({l1, l2, l3});
        out.push_back({-l1, -l2, -l3});
    }
    return out;
}

size_t enumerate_acyclic(const Triangulation& T, const std::function<bool(const EdgeOrientation&)>& emit) {
    size_t count = 0;
    AllSolutions solver(T.edge_count(), acyclic_cnf(T));
    solver.run([&](const std::vector<bool>& sol) {
        EdgeOrientation mu{sol};
        ++count;
        if (!emit(mu)) return false;
        mu.forward.flip();
        ++count;
        return emit(mu);
    });
    return count;
}

std::vector<EdgeOrientation> all_acyclic(const Triangulation& T) {
    std::vector<EdgeOrientation> out;
    enumerate_acyclic(T, [&](const EdgeOrientation& mu) {
        out.push_back(mu);
        return true;
    });
    return out;
}

bool is_acyclic(const Triangulation& T, const EdgeOrientation& mu) {
    check_size(T, mu);
    for (int t = 0; t < T.size(); ++t) {
        auto r = ranks(T, mu, t);
        std::array<bool, 4> seen{};
        for (int x : r) seen[x] = true;
        if (!(seen[0] && seen[1] && seen[2] && seen[3])) return false;
    }
    return true;
}

bool EdgeClassification::has_sink() const {
    for (bool s : sink)
        if (s) return true;
    return false;
}

EdgeClassification classify_edges(const Triangulation& T, const EdgeOrientation& mu) {
    if (!is_acyclic(T, mu)) throw NotAcyclic();
    EdgeClassification c;
    c.order.resize(T.size());
    c.roles.resize(T.size());
    c.mixed.assign(T.edge_count(), 0);
    c.sink.assign(T.edge_count(), true);
    for (int t = 0; t < T.size(); ++t) {
        auto r = ranks(T, mu, t);
        for (int v = 0; v < 4; ++v) c.order[t][r[v]] = v;
        for (int e = 0; e < 6; ++e) {
            int a = r[edge_vertices[e][0]], b = r[edge_vertices[e][1]];
            if (a > b) std::swap(a, b);
            EdgeRole role;
            if (a == 0 && b == 3)
                role = EdgeRole::very_long;
            else if (b - a == 2)
                role = EdgeRole::mixed;
            else if (a == 0)
                role = EdgeRole::short_bottom;
            else if (a == 2)
                role = EdgeRole::short_top;
            else
                role = EdgeRole::short_incompatible;
            c.roles[t][e] = role;
            int cls = T.edge_class(t, e);
            if (role == EdgeRole::mixed) ++c.mixed[cls];
            if (role != EdgeRole::very_long) c.sink[cls] = false;
        }
    }
    return c;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

FaceRelation face_relation(const Triangulation& T, const EdgeClassification& c) {
    UnionFind uf(T.face_count());
    for (int t = 0; t < T.size(); ++t) {
        const auto& R = c.order[t];
        // faces meeting at the bottom short edge, then at the top one
        uf.unite(T.face_id(t, R[3]), T.face_id(t, R[2]));
        uf.unite(T.face_id(t, R[1]), T.face_id(t, R[0]));
    }
    FaceRelation out;
    out.face_class.resize(T.face_count());
    std::vector<int> id(T.face_count(), -1);
    for (int f = 0; f < T.face_count(); ++f) {
        int r = uf.find(f);
        if (id[r] < 0) id[r] = out.class_count++;
        out.face_class[f] = id[r];
    }
    return out;
}

const char* to_string(FoliarFailure f) {
    switch (f) {
        case FoliarFailure::none: return "foliar";
        case FoliarFailure::not_acyclic: return "not acyclic";
        case FoliarFailure::sink_edge: return "sink edge";
        case FoliarFailure::short_loops: return "short loops";
        case FoliarFailure::not_strongly_connected: return "not strongly connected";
        case FoliarFailure::face_classes: return "face classes";
    }
    return "unknown";
}

namespace {

bool strongly_connected(const Triangulation& T, const EdgeOrientation& mu) {
    int V = T.vertex_count();
    std::vector<std::vector<int>> out(V), in(V);
    for (int e = 0; e < T.edge_count(); ++e) {
        auto [a, b] = T.edge_endpoints(e);
        if (!mu.forward[e]) std::swap(a, b);
        out[a].push_back(b);
        in[b].push_back(a);
    }
    auto reaches_all = [&](const std::vector<std::vector<int>>& adj) {
        std::vector<char> seen(V, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int n = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++n;
                    stack.push_back(w);
                }
        }
        return n == V;
    };
    return reaches_all(out) && reaches_all(in);
}

}  // namespace

FoliarVerdict is_foliar(const Triangulation& T, const EdgeOrientation& mu) {
    if (T.kind() != TriangulationKind::closed) throw std::invalid_argument("is_foliar needs a closed triangulation");
    FoliarVerdict v;
    if (!is_acyclic(T, mu)) {
        v.failure = FoliarFailure::not_acyclic;
        return v;
    }
    EdgeClassification c = classify_edges(T, mu);
    v.face_classes = face_relation(T, c).class_count;
    if (T.vertex_count() > 1) {
        std::vector<bool> loop(T.vertex_count(), false);
        for (int e = 0; e < T.edge_count(); ++e) {
            auto [a, b] = T.edge_endpoints(e);
            if (a == b) loop[a] = true;
        }
        for (bool l : loop)
            if (!l) {
                v.failure = FoliarFailure::short_loops;
                return v;
            }
        if (!strongly_connected(T, mu)) {
            v.failure = FoliarFailure::not_strongly_connected;
            return v;
        }
    }
    if (c.has_sink()) {
        v.failure = FoliarFailure::sink_edge;
        return v;
    }
    if (v.face_classes != T.vertex_count()) v.failure = FoliarFailure::face_classes;
    return v;
}

Triangulation pillow_move(const Triangulation& T, int tet, int i, int j) {
    if (T.kind() != TriangulationKind::closed) throw InvalidSite("pillow move needs a closed triangulation");
    if (tet < 0 || tet >= T.size() || i < 0 || i > 3 || j < 0 || j > 3 || i == j)
        throw InvalidSite("no such edge slot");
    int k = -1, l = -1;
    for (int w = 0; w < 4; ++w)
        if (w != i && w != j) (k < 0 ? k : l) = w;
    // faces opposite k and l meet along (i, j)
    const Gluing gk = T.gluing(tet, k), gl = T.gluing(tet, l);
    if (gk.tet == tet && gk.perm[k] == l) throw InvalidSite("the two faces at this edge are glued to each other");

    std::vector<std::array<Gluing, 4>> g(T.size() + 2);
    for (int t = 0; t < T.size(); ++t)
        for (int f = 0; f < 4; ++f) g[t][f] = T.gluing(t, f);
    const int A = T.size(), B = T.size() + 1;
    const Perm4 pi{l, k, i, j};
    const Perm4 id{0, 1, 2, 3};
    g[A][1] = {tet, pi};
    g[tet][k] = {A, inverse(pi)};
    g[A][0] = {tet, pi};
    g[tet][l] = {A, inverse(pi)};
    g[A][2] = {B, id};
    g[B][2] = {A, id};
    g[A][3] = {B, id};
    g[B][3] = {A, id};
    Perm4 s1 = compose(gk.perm, pi), s2 = compose(gl.perm, pi);
    g[B][1] = {gk.tet, s1};
    g[gk.tet][gk.perm[k]] = {B, inverse(s1)};
    g[B][0] = {gl.tet, s2};
    g[gl.tet][gl.perm[l]] = {B, inverse(s2)};
    return analyze_triangulation(std::move(g));
}

Triangulation pillow_move(const Triangulation& T, int tet, const EdgeOrientation& mu) {
    EdgeClassification c = classify_edges(T, mu);
    return pillow_move(T, tet, c.order[tet][0], c.order[tet][3]);
}

size_t count_extensions(const Triangulation& T, const EdgeOrientation& mu, const Triangulation& P) {
    if (P.size() < T.size()) throw std::invalid_argument("extension target is smaller than the source");
    size_t n = 0;
    enumerate_acyclic(P, [&](const EdgeOrientation& nu) {
        bool agrees = true;
        for (int t = 0; t < T.size() && agrees; ++t)
            for (auto [i, j] : edge_vertices)
                if (points_from(T, mu, t, i, j) != points_from(P, nu, t, i, j)) {
                    agrees = false;
                    break;
                }
        if (agrees) ++n;
        return true;
    });
    return n;
}

CoboundaryConvention CoboundaryConvention::standard(const Triangulation& T) {
    return {std::vector<int>(T.face_count(), 1), std::vector<int>(T.edge_count(), 1)};
}

namespace {

// Walks once around edge class e, turning right-handedly about the direction
// tail -> head, and reports each (tet, face) side the walk leaves through.
template <class Step>
void walk_edge(const Triangulation& T, int e, bool along_reference, Step&& step) {
    const EdgeSlot s = T.slots_of_edge(e).front();
    int t = s.tet, p = edge_vertices[s.edge][0], q = edge_vertices[s.edge][1];
    if ((T.edge_slot_sign(t, s.edge) > 0) != along_reference) std::swap(p, q);
    int x = -1, y = -1;
    for (int w = 0; w < 4; ++w)
        if (w != p && w != q) (x < 0 ? x : y) = w;
    if (parity4(p, q, x, y) * T.tet_sign(t) != 1) std::swap(x, y);
    const int t0 = t, p0 = p, q0 = q;
    for (int guard = 0; guard <= 6 * T.size(); ++guard) {
        step(t, x);
        const Gluing& g = T.gluing(t, x);
        int p2 = g.perm[p], q2 = g.perm[q], y2 = g.perm[x], x2 = g.perm[y];
        t = g.tet, p = p2, q = q2, x = x2, y = y2;
        if (parity4(p, q, x, y) * T.tet_sign(t) != 1) throw std::logic_error("edge walk lost its orientation");
        if (t == t0 && p == p0 && q == q0) return;
    }
    throw std::logic_error("edge walk does not close");
}

}  // namespace

IntMatrix dual_coboundary(const Triangulation& T, const EdgeOrientation* mu, const CoboundaryConvention& conv) {
    IntMatrix d(T.edge_count(), T.face_count());
    for (int e = 0; e < T.edge_count(); ++e) {
        bool along = mu ? static_cast<bool>(mu->forward[e]) : true;
        walk_edge(T, e, along, [&](int t, int face) {
            int f = T.face_id(t, face);
            int sign = T.face_sides(f)[0] == FaceSide{t, face} ? 1 : -1;
            d(e, f) += sign * conv.face_flip[f] * conv.walk_flip[e];
        });
    }
    return d;
}

EulerClassResult euler_class(const Triangulation& T, const EdgeOrientation& mu) {
    return euler_class(T, mu, CoboundaryConvention::standard(T));
}

EulerClassResult euler_class(const Triangulation& T, const EdgeOrientation& mu, const CoboundaryConvention& conv) {
    if (T.vertex_count() != 1) throw std::invalid_argument("euler class is offered for 1-vertex triangulations only");
    FoliarVerdict v = is_foliar(T, mu);
    if (!v.foliar()) throw NotFoliarError(std::string("orientation is not foliar: ") + to_string(v.failure));
    EdgeClassification c = classify_edges(T, mu);
    EulerClassResult out;
    IntVector phi(T.edge_count());
    for (int e = 0; e < T.edge_count(); ++e) {
        mpq_class val(conv.walk_flip[e] * (2 - c.mixed[e]), 2);
        val.canonicalize();
        out.cochain.push_back(val);
        if (val.get_den() != 1) throw NonIntegralCochain();
        phi[e] = val.get_num();
    }
    out.coboundary = dual_coboundary(T, &mu, conv);
    out.witness = solve_in_image(out.coboundary, phi);
    out.is_zero = out.witness.has_value();
    return out;
}

Slope normalize_slope(long p, long q) {
    if (p == 0 && q == 0) throw std::invalid_argument("the zero class is not a slope");
    long g = std::gcd(p, q);
    p /= g, q /= g;
    if (p < 0 || (p == 0 && q < 0)) p = -p, q = -q;
    return {p, q};
}

long algebraic_intersection(const Triangulation& T, const CornerWeights& A, const CornerWeights& B) {
    long total = 0;
    for (int t = 0; t < T.size(); ++t)
        for (int v = 0; v < 4; ++v) {
            std::array<int, 3> ws{};
            int k = 0;
            for (int w = 0; w < 4; ++w)
                if (w != v) ws[k++] = w;
            if (parity4(v, ws[0], ws[1], ws[2]) != T.tet_sign(t)) std::swap(ws[1], ws[2]);
            long F = 0;
            for (k = 0; k < 3; ++k) {
                int wa = ws[k], wb = ws[(k + 1) % 3];
                int f = 6 - v - wa - wb;
                const Gluing& g = T.gluing(t, f);
                std::array<int, 3> mine{t, v, f}, other{g.tet, g.perm[v], g.perm[f]};
                bool aligned = mine <= other ? wa < wb : g.perm[wa] < g.perm[wb];
                long a = -A[t][v][f], b = -B[t][v][f];
                if (aligned) {
                    total += a * F;
                    F += b;
                } else {
                    F += b;
                    total += a * F;
                }
            }
        }
    return total;
}

std::array<long, 2> peripheral_class(const Triangulation& T, const CornerWeights& curve) {
    if (!T.peripheral()) throw MissingPeripheralData();
    const Peripheral& P = *T.peripheral();
    long ml = algebraic_intersection(T, P.meridian, P.longitude);
    if (ml == 0) throw std::runtime_error("meridian and longitude do not form a basis");
    long gl = algebraic_intersection(T, curve, P.longitude), gm = algebraic_intersection(T, curve, P.meridian);
    if (gl % ml != 0 || gm % ml != 0) throw std::runtime_error("peripheral basis is not unimodular");
    return {gl / ml, -gm / ml};
}

bool persistent_classes(const std::vector<std::array<long, 2>>& classes) {
    if (classes.empty()) return false;
    for (const auto& a : classes) {
        if (a[0] == 0 && a[1] == 0) return false;
        if (classes.front()[0] * a[1] - classes.front()[1] * a[0] != 0) return false;
    }
    return true;
}

AnnuliResult cusp_annuli(const Triangulation& T, const EdgeOrientation& mu) {
    if (T.kind() != TriangulationKind::ideal || T.vertex_count() != 1)
        throw std::invalid_argument("cusp annuli need a one-cusped ideal triangulation");
    if (!T.peripheral()) throw MissingPeripheralData();
    EdgeClassification c = classify_edges(T, mu);
    if (c.has_sink()) throw SinkEdgePresent();

    const int n = T.size();
    auto key = [](int t, int v, int f) { return 16 * t + 4 * v + f; };
    std::vector<int> partner(16 * n, -1), rect_edge(16 * n, -1);
    for (int t = 0; t < n; ++t) {
        const auto& R = c.order[t];
        // each vertical rectangle leaves one arc at the middle vertex of its faces
        const int arcs[2][4] = {{R[1], R[2], R[3], edge_index(R[0], R[1])}, {R[2], R[0], R[1], edge_index(R[2], R[3])}};
        for (const auto& a : arcs) {
            int k1 = key(t, a[0], a[1]), k2 = key(t, a[0], a[2]);
            partner[k1] = k2, partner[k2] = k1;
            rect_edge[k1] = rect_edge[k2] = a[3];
        }
    }
    AnnuliResult out;
    std::vector<char> seen(16 * n, 0);
    for (int start = 0; start < 16 * n; ++start) {
        if (partner[start] < 0 || seen[start]) continue;
        VerticalAnnulus ann;
        ann.curve.assign(n, {});
        int cur = start;
        for (;;) {
            int exit = partner[cur];
            seen[cur] = seen[exit] = 1;
            int t = cur / 16, v = (cur / 4) % 4;
            ann.curve[t][v][cur % 4] += 1;
            ann.curve[t][v][exit % 4] -= 1;
            ann.steps.push_back({t, rect_edge[cur], cur % 4, exit % 4});
            const Gluing& g = T.gluing(t, exit % 4);
            int next = key(g.tet, g.perm[v], g.perm[exit % 4]);
            if (partner[next] < 0) throw ArcsDoNotClose();
            if (next == start) break;
            if (seen[next]) throw ArcsDoNotClose();
            cur = next;
        }
        ann.homology = peripheral_class(T, ann.curve);
        out.annuli.push_back(std::move(ann));
    }
    std::vector<std::array<long, 2>> classes;
    for (const auto& a : out.annuli) classes.push_back(a.homology);
    bool ok = persistent_classes(classes);
    out.persistent = ok;
    if (ok) out.degeneracy = normalize_slope(out.annuli.front().homology[0], out.annuli.front().homology[1]);
    return out;
}

IntVector face_crossings(const Triangulation& T, const CornerWeights& curve) {
    IntVector c(T.face_count());
    for (int f = 0; f < T.face_count(); ++f) {
        FaceSide s = T.face_sides(f)[0];
        // strands entering the first side's tet cross against the co-orientation
        for (int v = 0; v < 4; ++v)
            if (v != s.face) c[f] -= curve[s.tet][v][s.face];
    }
    return c;
}

Slope homological_longitude(const Triangulation& T) {
    if (!T.peripheral()) throw MissingPeripheralData();
    IntMatrix delta = dual_coboundary(T, nullptr, CoboundaryConvention::standard(T));
    IntVector cm = face_crossings(T, T.peripheral()->meridian), cl = face_crossings(T, T.peripheral()->longitude);
    IntMatrix K(T.face_count(), 2 + T.edge_count());
    for (int f = 0; f < T.face_count(); ++f) {
        K(f, 0) = cm[f];
        K(f, 1) = cl[f];
        for (int e = 0; e < T.edge_count(); ++e) K(f, 2 + e) = delta(e, f);
    }
    IntMatrix ker = integer_kernel(K);
    IntMatrix proj(2, ker.cols());
    for (size_t j = 0; j < ker.cols(); ++j) proj(0, j) = ker(0, j), proj(1, j) = ker(1, j);
    HermiteForm hf = hermite_normal_form(proj);
    if (hf.rank() != 1) throw NotRationalHomologySolidTorus();
    mpz_class p = hf.h(0, 0), q = hf.h(1, 0);
    if (!p.fits_slong_p() || !q.fits_slong_p()) throw std::overflow_error("slope does not fit in a machine integer");
    return normalize_slope(p.get_si(), q.get_si());
}

}  // namespace cert
