#include "cert/holonomy.hpp"
#include "cert/zlattice.hpp"

#include <deque>
#include <map>
#include <set>

namespace cert {

namespace {

struct Spine {
    std::vector<int> generator_of_face;  // -1 for tree faces
    std::vector<std::optional<FaceCrossing>> parent;  // crossing that reaches each tet
};

Spine build_spine(const Triangulation& T) {
    Spine s;
    s.generator_of_face.assign(T.face_count(), -1);
    s.parent.assign(T.size(), std::nullopt);
    std::vector<bool> seen(T.size(), false), tree(T.face_count(), false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        for (int f = 0; f < 4; ++f) {
            int u = T.gluing(t, f).tet;
            if (seen[u]) continue;
            seen[u] = true;
            tree[T.face_id(t, f)] = true;
            s.parent[u] = FaceCrossing{t, f};
            queue.push_back(u);
        }
    }
    int g = 0;
    for (int f = 0; f < T.face_count(); ++f)
        if (!tree[f]) s.generator_of_face[f] = g++;
    return s;
}

FacePath path_from_base(const Spine& s, int t) {
    FacePath p;
    while (s.parent[t]) {
        p.push_back(*s.parent[t]);
        t = s.parent[t]->tet;
    }
    return {p.rbegin(), p.rend()};
}

FacePath path_to_base(const Triangulation& T, const Spine& s, int t) {
    FacePath p;
    while (s.parent[t]) {
        const FaceCrossing& c = *s.parent[t];
        p.push_back({t, T.gluing(c.tet, c.face).perm[c.face]});
        t = c.tet;
    }
    return p;
}

std::optional<int> crossing_letter(const Triangulation& T, const Spine& s, const FaceCrossing& c) {
    int fid = T.face_id(c.tet, c.face);
    int g = s.generator_of_face[fid];
    if (g < 0) return std::nullopt;
    const FaceSide& first = T.face_sides(fid)[0];
    bool forward = first.tet == c.tet && first.face == c.face;
    return letter(g, !forward);
}

Word word_of(const Triangulation& T, const Spine& s, const FacePath& p) {
    Word w;
    for (const FaceCrossing& c : p)
        if (auto l = crossing_letter(T, s, c)) w.letters.push_back(*l);
    return free_reduce(w);
}

// crossings around an edge class, starting from its first slot
FacePath edge_loop(const Triangulation& T, int e) {
    EdgeSlot s = T.slots_of_edge(e).front();
    int a = edge_vertices[s.edge][0], b = edge_vertices[s.edge][1];
    int x = 0;
    while (x == a || x == b) ++x;
    const std::array<int, 4> start{s.tet, a, b, x};
    std::array<int, 4> st = start;
    FacePath p;
    do {
        auto [t, va, vb, vx] = st;
        int vy = 6 - va - vb - vx;
        const Gluing& g = T.gluing(t, vx);
        p.push_back({t, vx});
        st = {g.tet, g.perm[va], g.perm[vb], g.perm[vy]};
    } while (st != start && p.size() <= static_cast<size_t>(6 * T.size()));
    return p;
}

// Cusp loops: fundamental cycles of the dual graph of the cusp triangulation,
// each with its face path and its corner-weight curve.
struct CuspLoop {
    FacePath path;
    CornerWeights curve;
};

std::vector<CuspLoop> cusp_loops(const Triangulation& T) {
    using Tri = std::pair<int, int>;  // (tet, vertex)
    std::map<Tri, std::array<int, 3>> parent;  // (tet, vertex, face) crossing that reached it
    std::map<Tri, bool> seen;
    const Tri root{0, 0};
    std::deque<Tri> queue{root};
    seen[root] = true;
    std::set<std::array<int, 3>> tree_sides;
    auto partner = [&](int t, int v, int f) {
        const Gluing& g = T.gluing(t, f);
        return std::array<int, 3>{g.tet, g.perm[v], g.perm[f]};
    };
    while (!queue.empty()) {
        auto [t, v] = queue.front();
        queue.pop_front();
        for (int f = 0; f < 4; ++f) {
            if (f == v) continue;
            auto q = partner(t, v, f);
            Tri n{q[0], q[1]};
            if (seen[n]) continue;
            seen[n] = true;
            parent[n] = {t, v, f};
            tree_sides.insert({t, v, f});
            tree_sides.insert(q);
            queue.push_back(n);
        }
    }
    auto to_root = [&](Tri x) {
        std::vector<std::array<int, 3>> p;
        while (x != root) {
            auto c = parent.at(x);
            p.push_back(partner(c[0], c[1], c[2]));
            x = {c[0], c[1]};
        }
        return p;
    };
    std::vector<CuspLoop> loops;
    for (int t = 0; t < T.size(); ++t)
        for (int v = 0; v < 4; ++v)
            for (int f = 0; f < 4; ++f) {
                if (f == v) continue;
                std::array<int, 3> side{t, v, f}, q = partner(t, v, f);
                if (tree_sides.count(side) || !(side < q)) continue;
                auto back = to_root({t, v});
                std::vector<std::array<int, 3>> cr(back.rbegin(), back.rend());
                // reverse the crossings of the path to the root to walk out to (t, v)
                for (auto& c : cr) c = partner(c[0], c[1], c[2]);
                cr.push_back(side);
                for (auto& c : to_root({q[0], q[1]})) cr.push_back(c);
                CuspLoop L;
                L.curve.assign(T.size(), {});
                for (const auto& c : cr) {
                    auto d = partner(c[0], c[1], c[2]);
                    L.curve[c[0]][c[1]][c[2]] -= 1;
                    L.curve[d[0]][d[1]][d[2]] += 1;
                    L.path.push_back({c[0], c[2]});
                }
                loops.push_back(std::move(L));
            }
    return loops;
}

Word peripheral_word(const Triangulation& T, const Spine& s, const std::vector<CuspLoop>& loops,
                     const std::vector<std::array<long, 2>>& classes, std::array<long, 2> target) {
    IntMatrix M(2, loops.size());
    for (size_t k = 0; k < loops.size(); ++k) {
        M(0, k) = classes[k][0];
        M(1, k) = classes[k][1];
    }
    auto c = solve_in_image(M, {target[0], target[1]});
    if (!c) throw std::runtime_error("cusp loops do not generate the peripheral lattice");
    // the peripheral group is abelian, so the order of the factors is free
    Word w;
    for (size_t k = 0; k < loops.size(); ++k)
        if ((*c)[k] != 0) w = w * power(word_of(T, s, loops[k].path), (*c)[k].get_si());
    return free_reduce(w);
}

}  // namespace

Word path_word(const Triangulation& T, const FacePath& path) {
    return word_of(T, build_spine(T), path);
}

DualSpinePresentation dual_spine_presentation(const Triangulation& T, std::optional<Slope> filling) {
    Spine s = build_spine(T);
    DualSpinePresentation d;
    int gens = 0;
    for (int g : s.generator_of_face) gens = std::max(gens, g + 1);
    if (gens > 26) throw std::invalid_argument("too many generators for single-letter names");
    d.generator_faces.assign(gens, -1);
    for (int f = 0; f < T.face_count(); ++f) {
        int g = s.generator_of_face[f];
        if (g < 0) continue;
        d.generator_faces[g] = f;
        d.presentation.generators.push_back(std::string(1, static_cast<char>('a' + g)));
        const FaceSide& first = T.face_sides(f)[0];
        FacePath p = path_from_base(s, first.tet);
        p.push_back({first.tet, first.face});
        for (const FaceCrossing& c : path_to_base(T, s, T.gluing(first.tet, first.face).tet)) p.push_back(c);
        d.paths.push_back(std::move(p));
    }
    for (int e = 0; e < T.edge_count(); ++e) {
        Word w = cyclic_reduce(word_of(T, s, edge_loop(T, e)));
        if (!w.empty()) d.presentation.relators.push_back(std::move(w));
    }
    if (T.kind() == TriangulationKind::ideal && T.peripheral()) {
        auto loops = cusp_loops(T);
        std::vector<std::array<long, 2>> classes;
        for (const auto& L : loops) classes.push_back(peripheral_class(T, L.curve));
        d.meridian = peripheral_word(T, s, loops, classes, {1, 0});
        d.longitude = peripheral_word(T, s, loops, classes, {0, 1});
    }
    if (filling) {
        if (!d.meridian) throw MissingPeripheralData();
        Word r = cyclic_reduce(power(*d.meridian, filling->p) * power(*d.longitude, filling->q));
        if (!r.empty()) d.presentation.relators.push_back(std::move(r));
    }
    return d;
}

}  // namespace cert
