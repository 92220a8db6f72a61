#pragma once

// Reference computations on triangulations for tests: edge classes by plain
// graph search over directed slots, and acyclic orientations by filtering all
// 2^E assignments face by face.

#include "cert/foliar.hpp"

#include <fstream>
#include <map>
#include <set>
#include <string>

namespace oracle {

inline cert::json load_fixture(const std::string& rel) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + rel);
    if (!in) throw std::runtime_error("missing fixture " + rel);
    return cert::json::parse(in);
}

// Directed slot (t, a, b): the edge of t from vertex a to vertex b.
using DSlot = std::array<int, 3>;

// Orbit of every directed slot under the face maps, found by search.
// Returns, for every undirected slot (t, e), the representative directed slot
// of its orbit that is reachable from (t, low, high).
inline std::map<DSlot, DSlot> directed_orbits(const cert::Triangulation& T) {
    std::map<DSlot, DSlot> rep;
    for (int t = 0; t < T.size(); ++t)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (a == b || rep.count({t, a, b})) continue;
                std::vector<DSlot> stack{{t, a, b}};
                rep[{t, a, b}] = {t, a, b};
                while (!stack.empty()) {
                    DSlot s = stack.back();
                    stack.pop_back();
                    for (int f = 0; f < 4; ++f) {
                        if (f == s[1] || f == s[2]) continue;
                        const auto& g = T.gluing(s[0], f);
                        DSlot n{g.tet, g.perm[s[1]], g.perm[s[2]]};
                        if (!rep.count(n)) {
                            rep[n] = {t, a, b};
                            stack.push_back(n);
                        }
                    }
                }
            }
    return rep;
}

// True when the directed cycle test finds no cyclic face under mu, where the
// direction of each slot is read off through the orbit representatives.
inline bool faces_acyclic(const cert::Triangulation& T, const std::map<DSlot, DSlot>& rep,
                          const std::map<DSlot, bool>& rep_dir) {
    auto dir = [&](int t, int a, int b) { return rep_dir.at(rep.at({t, a, b})); };
    for (int t = 0; t < T.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            std::vector<int> v;
            for (int w = 0; w < 4; ++w)
                if (w != f) v.push_back(w);
            bool c1 = dir(t, v[0], v[1]) && dir(t, v[1], v[2]) && dir(t, v[2], v[0]);
            bool c2 = dir(t, v[1], v[0]) && dir(t, v[2], v[1]) && dir(t, v[0], v[2]);
            if (c1 || c2) return false;
        }
    return true;
}

// All acyclic orientations, expressed in the library's edge-class indexing.
inline std::set<cert::EdgeOrientation> brute_force_acyclic(const cert::Triangulation& T) {
    auto rep = directed_orbits(T);
    // orbit representative of each library class pointing along its reference
    std::vector<DSlot> ref(T.edge_count());
    for (int e = 0; e < T.edge_count(); ++e) {
        cert::EdgeSlot s = T.slots_of_edge(e).front();
        int a = cert::edge_vertices[s.edge][0], b = cert::edge_vertices[s.edge][1];
        if (T.edge_slot_sign(s.tet, s.edge) < 0) std::swap(a, b);
        ref[e] = rep.at({s.tet, a, b});
    }
    std::set<cert::EdgeOrientation> out;
    const int E = T.edge_count();
    for (long bits = 0; bits < (1L << E); ++bits) {
        std::map<DSlot, bool> rep_dir;
        cert::EdgeOrientation mu;
        for (int e = 0; e < E; ++e) {
            bool fwd = (bits >> e) & 1;
            mu.forward.push_back(fwd);
            DSlot r = ref[e], rev = rep.at({r[0], r[2], r[1]});
            rep_dir[r] = fwd;
            rep_dir[rev] = !fwd;
        }
        if (faces_acyclic(T, rep, rep_dir)) out.insert(mu);
    }
    return out;
}

}  // namespace oracle
