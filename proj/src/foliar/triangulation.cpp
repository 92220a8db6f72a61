#include "cert/triangulation.hpp"

#include <algorithm>
#include <numeric>

namespace cert {

int parity(const Perm4& p) {
    int s = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

int parity4(int a, int b, int c, int d) { return parity(Perm4{a, b, c, d}); }

Perm4 inverse(const Perm4& p) {
    Perm4 q{};
    for (int i = 0; i < 4; ++i) q[p[i]] = i;
    return q;
}

Perm4 compose(const Perm4& outer, const Perm4& inner) {
    Perm4 r{};
    for (int i = 0; i < 4; ++i) r[i] = outer[inner[i]];
    return r;
}

int edge_index(int i, int j) {
    if (i > j) std::swap(i, j);
    for (int k = 0; k < 6; ++k)
        if (edge_vertices[k][0] == i && edge_vertices[k][1] == j) return k;
    throw std::invalid_argument("edge_index: not an edge");
}

std::array<int, 2> Triangulation::edge_endpoints(int e) const {
    const EdgeSlot& s = edge_slots_[e].front();
    int i = edge_vertices[s.edge][0], j = edge_vertices[s.edge][1];
    if (edge_sign_[s.tet][s.edge] < 0) std::swap(i, j);
    return {vertex_class_[s.tet][i], vertex_class_[s.tet][j]};
}

namespace {

using Kind = TriangulationError::Kind;

// union-find carrying a Z/2 offset to the parent
struct ParityUnionFind {
    std::vector<int> parent, offset;
    explicit ParityUnionFind(int n) : parent(n), offset(n, 0) { std::iota(parent.begin(), parent.end(), 0); }
    std::pair<int, int> find(int x) {
        int s = 0;
        while (parent[x] != x) {
            s ^= offset[x];
            x = parent[x];
        }
        return {x, s};
    }
    // record that parity(a) ^ parity(b) == rel; false on contradiction
    bool unite(int a, int b, int rel) {
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        if (ra == rb) return (sa ^ sb) == rel;
        parent[ra] = rb;
        offset[ra] = sa ^ sb ^ rel;
        return true;
    }
};

void check_table(const std::vector<std::array<Gluing, 4>>& g) {
    const int n = static_cast<int>(g.size());
    if (n == 0) throw TriangulationError(Kind::malformed, "triangulation has no tetrahedra");
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& gl = g[t][f];
            if (gl.tet < 0 || gl.tet >= n)
                throw TriangulationError(Kind::malformed, "gluing target out of range at tet " + std::to_string(t));
            Perm4 s = gl.perm;
            std::sort(s.begin(), s.end());
            if (s != Perm4{0, 1, 2, 3})
                throw TriangulationError(Kind::malformed, "gluing map is not a permutation at tet " + std::to_string(t));
            int u = gl.tet, fu = gl.perm[f];
            if (u == t && fu == f)
                throw TriangulationError(Kind::malformed, "face glued to itself at tet " + std::to_string(t));
            const Gluing& back = g[u][fu];
            if (back.tet != t || back.perm != inverse(gl.perm))
                throw TriangulationError(Kind::malformed, "gluing is not an involution at tet " + std::to_string(t) +
                                                              " face " + std::to_string(f));
        }
}

}  // namespace

Triangulation analyze_triangulation(std::vector<std::array<Gluing, 4>> gluings, std::optional<Peripheral> peripheral) {
    check_table(gluings);
    Triangulation T;
    const int n = static_cast<int>(gluings.size());
    T.gluings_ = std::move(gluings);
    const auto& g = T.gluings_;

    // orientation: like-signed tets must be glued by odd permutations
    T.tet_sign_.assign(n, 0);
    for (int root = 0; root < n; ++root) {
        if (T.tet_sign_[root]) continue;
        T.tet_sign_[root] = 1;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f) {
                int u = g[t][f].tet, s = -T.tet_sign_[t] * parity(g[t][f].perm);
                if (T.tet_sign_[u] == 0) {
                    T.tet_sign_[u] = s;
                    stack.push_back(u);
                } else if (T.tet_sign_[u] != s) {
                    throw TriangulationError(Kind::non_orientable, "triangulation is not orientable");
                }
            }
        }
    }

    // edge classes with direction parity
    ParityUnionFind edges(6 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& gl = g[t][f];
            for (int e = 0; e < 6; ++e) {
                int i = edge_vertices[e][0], j = edge_vertices[e][1];
                if (i == f || j == f) continue;
                int pi = gl.perm[i], pj = gl.perm[j];
                if (!edges.unite(6 * t + e, 6 * gl.tet + edge_index(pi, pj), pi < pj ? 0 : 1))
                    throw TriangulationError(Kind::edge_reversed, "an edge is identified with itself reversed");
            }
        }
    T.edge_class_.assign(n, {});
    T.edge_sign_.assign(n, {});
    std::vector<int> root_id(6 * n, -1);
    for (int t = 0; t < n; ++t)
        for (int e = 0; e < 6; ++e) {
            auto [r, s] = edges.find(6 * t + e);
            if (root_id[r] < 0) {
                root_id[r] = static_cast<int>(T.edge_slots_.size());
                T.edge_slots_.emplace_back();
            }
            T.edge_class_[t][e] = root_id[r];
            T.edge_sign_[t][e] = s ? -1 : 1;
            T.edge_slots_[root_id[r]].push_back({t, e});
        }
    // make the first slot of every class point along the reference direction
    for (auto& slots : T.edge_slots_) {
        const EdgeSlot& s = slots.front();
        if (T.edge_sign_[s.tet][s.edge] < 0)
            for (const EdgeSlot& o : slots) T.edge_sign_[o.tet][o.edge] = -T.edge_sign_[o.tet][o.edge];
    }

    // vertex classes and link Euler characteristic
    ParityUnionFind verts(4 * n), ends(16 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& gl = g[t][f];
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                verts.unite(4 * t + v, 4 * gl.tet + gl.perm[v], 0);
                for (int w = 0; w < 4; ++w)
                    if (w != v && w != f) ends.unite(16 * t + 4 * v + w, 16 * gl.tet + 4 * gl.perm[v] + gl.perm[w], 0);
            }
        }
    T.vertex_class_.assign(n, {});
    std::vector<int> vid(4 * n, -1);
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v) {
            int r = verts.find(4 * t + v).first;
            if (vid[r] < 0) vid[r] = T.vertex_classes_++;
            T.vertex_class_[t][v] = vid[r];
        }
    std::vector<int> triangles(T.vertex_classes_, 0), link_vertices(T.vertex_classes_, 0);
    std::vector<char> counted(16 * n, 0);
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v) {
            ++triangles[T.vertex_class_[t][v]];
            for (int w = 0; w < 4; ++w) {
                if (w == v) continue;
                int r = ends.find(16 * t + 4 * v + w).first;
                if (!counted[r]) {
                    counted[r] = 1;
                    ++link_vertices[T.vertex_class_[t][v]];
                }
            }
        }
    T.link_chi_.resize(T.vertex_classes_);
    int spheres = 0, tori = 0;
    for (int c = 0; c < T.vertex_classes_; ++c) {
        T.link_chi_[c] = link_vertices[c] - triangles[c] / 2;
        if (T.link_chi_[c] == 2) ++spheres;
        if (T.link_chi_[c] == 0) ++tori;
    }
    if (spheres == T.vertex_classes_)
        T.kind_ = TriangulationKind::closed;
    else if (tori == T.vertex_classes_)
        T.kind_ = TriangulationKind::ideal;
    else
        throw TriangulationError(Kind::not_closed_or_ideal, "vertex links are neither all spheres nor all tori");

    // quotient faces
    T.face_id_.assign(n, {-1, -1, -1, -1});
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (T.face_id_[t][f] >= 0) continue;
            FaceSide a{t, f}, b{g[t][f].tet, g[t][f].perm[f]};
            int id = static_cast<int>(T.faces_.size());
            T.faces_.push_back({std::min(a, b), std::max(a, b)});
            T.face_id_[a.tet][a.face] = T.face_id_[b.tet][b.face] = id;
        }

    if (peripheral) {
        if (static_cast<int>(peripheral->meridian.size()) != n || static_cast<int>(peripheral->longitude.size()) != n)
            throw TriangulationError(Kind::malformed, "peripheral data has the wrong number of tetrahedra");
        T.peripheral_ = std::move(peripheral);
    }
    return T;
}

namespace {

CornerWeights weights_from_json(const json& j, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw TriangulationError(Kind::malformed, "corner weights must list every tetrahedron");
    CornerWeights w(n);
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v)
            for (int f = 0; f < 4; ++f) w[t][v][f] = j.at(t).at(v).at(f).get<int>();
    return w;
}

json weights_to_json(const CornerWeights& w) {
    json out = json::array();
    for (const auto& tet : w) out.push_back(tet);
    return out;
}

}  // namespace

Triangulation triangulation_from_json(const json& j) {
    try {
        int n = j.at("tets").get<int>();
        const json& gl = j.at("gluings");
        if (!gl.is_array() || static_cast<int>(gl.size()) != n)
            throw TriangulationError(Kind::malformed, "gluings must have one row per tetrahedron");
        std::vector<std::array<Gluing, 4>> rows(n);
        for (int t = 0; t < n; ++t) {
            if (gl[t].size() != 4) throw TriangulationError(Kind::malformed, "each tetrahedron needs four gluings");
            for (int f = 0; f < 4; ++f) {
                rows[t][f].tet = gl[t][f].at(0).get<int>();
                for (int k = 0; k < 4; ++k) rows[t][f].perm[k] = gl[t][f].at(1).at(k).get<int>();
            }
        }
        std::optional<Peripheral> per;
        if (j.contains("peripheral") && !j["peripheral"].is_null()) {
            const json& p = j["peripheral"];
            per = Peripheral{weights_from_json(p.at("meridian"), n), weights_from_json(p.at("longitude"), n)};
        }
        return analyze_triangulation(std::move(rows), std::move(per));
    } catch (const json::exception& e) {
        throw TriangulationError(Kind::malformed, std::string("bad triangulation file: ") + e.what());
    }
}

json triangulation_to_json(const Triangulation& T) {
    json out;
    out["tets"] = T.size();
    json rows = json::array();
    for (int t = 0; t < T.size(); ++t) {
        json row = json::array();
        for (int f = 0; f < 4; ++f) row.push_back(json::array({T.gluing(t, f).tet, T.gluing(t, f).perm}));
        rows.push_back(row);
    }
    out["gluings"] = rows;
    if (T.peripheral())
        out["peripheral"] = {{"meridian", weights_to_json(T.peripheral()->meridian)},
                             {"longitude", weights_to_json(T.peripheral()->longitude)}};
    return out;
}

}  // namespace cert
