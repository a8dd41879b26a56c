#include "ulb/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace ulb {

namespace {

struct Endpoint {
    int crossing;
    int slot;
    bool operator==(const Endpoint&) const = default;
};

// label -> its two endpoints
std::map<int, std::vector<Endpoint>> endpoints_of(const PDCode& code) {
    std::map<int, std::vector<Endpoint>> ep;
    for (std::size_t c = 0; c < code.crossings.size(); ++c)
        for (int s = 0; s < 4; ++s) ep[code.crossings[c][s]].push_back({(int)c, s});
    for (const auto& [label, v] : ep)
        if (v.size() != 2)
            throw PDError("arc label " + std::to_string(label) + " occurs " +
                          std::to_string(v.size()) + " times (must be exactly 2)");
    return ep;
}

Endpoint partner(const std::map<int, std::vector<Endpoint>>& ep, const PDCode& code,
                 const Endpoint& e) {
    const auto& v = ep.at(code.crossings[e.crossing][e.slot]);
    if (v[0] == e) return v[1];
    if (v[1] == e) return v[0];
    throw PDError("inconsistent endpoint table");
}

} // namespace

PDCode pd_from_text(const std::string& text) {
    PDCode code;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto parse_int = [&]() -> int {
        skip_ws();
        std::size_t j = i;
        if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
        std::size_t digits = j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == digits) throw PDError("expected integer at position " + std::to_string(i));
        int v = std::stoi(text.substr(i, j - i));
        i = j;
        return v;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (i >= text.size() || text[i] != c)
            throw PDError(std::string("expected '") + c + "' at position " + std::to_string(i));
        ++i;
    };
    auto parse_tuple = [&]() {
        expect('[');
        std::array<int, 4> t;
        for (int k = 0; k < 4; ++k) {
            t[k] = parse_int();
            if (k < 3) expect(',');
        }
        expect(']');
        code.crossings.push_back(t);
    };

    skip_ws();
    if (i < text.size() && text[i] == '[') {
        // JSON array of 4-tuples.
        expect('[');
        skip_ws();
        if (i < text.size() && text[i] != ']') {
            while (true) {
                parse_tuple();
                skip_ws();
                if (i < text.size() && text[i] == ',') {
                    ++i;
                    continue;
                }
                break;
            }
        }
        expect(']');
    } else {
        // PD[X[...],X[...],...]
        auto head = [&](const std::string& word) {
            skip_ws();
            for (char c : word) {
                if (i >= text.size() ||
                    std::toupper(static_cast<unsigned char>(text[i])) !=
                        std::toupper(static_cast<unsigned char>(c)))
                    return false;
                ++i;
            }
            return true;
        };
        if (!head("PD")) throw PDError("expected PD[...] or JSON [[...]]");
        expect('[');
        while (true) {
            skip_ws();
            if (i < text.size() && (text[i] == 'X' || text[i] == 'x')) {
                ++i;
                parse_tuple();
                skip_ws();
                if (i < text.size() && text[i] == ',') {
                    ++i;
                    continue;
                }
                break;
            }
            break;
        }
        expect(']');
    }
    skip_ws();
    if (i != text.size()) throw PDError("trailing characters after PD code");
    if (code.crossings.empty()) throw PDError("diagram must have at least one crossing");
    return code;
}

DiagramAnalysis analyze(const PDCode& code) {
    if (code.crossings.empty()) throw PDError("diagram must have at least one crossing");
    const std::size_t V = code.crossings.size();
    DiagramAnalysis a;
    a.code = code;
    auto ep = endpoints_of(code);

    // Connectivity over crossings through shared arcs.
    {
        std::vector<char> seen(V, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            std::size_t c = stack.back();
            stack.pop_back();
            for (int s = 0; s < 4; ++s) {
                Endpoint o = partner(ep, code, {(int)c, s});
                if (!seen[o.crossing]) {
                    seen[o.crossing] = 1;
                    stack.push_back(o.crossing);
                }
            }
        }
        if (std::count(seen.begin(), seen.end(), 1) != (long)V)
            throw PDError("diagram is split or disconnected");
    }

    // Faces: walk out-ray (c,s) -> arrive at partner (c',s') covering corner
    // (c',s') -> leave along (c', s'+1).
    a.face_of_corner.assign(4 * V, -1);
    int nfaces = 0;
    for (std::size_t c0 = 0; c0 < V; ++c0)
        for (int s0 = 0; s0 < 4; ++s0) {
            // The walk covering corner (c0, s0) arrives along ray s0.
            if (a.face_of_corner[4 * c0 + s0] >= 0) continue;
            int f = nfaces++;
            Endpoint at{(int)c0, s0};
            do {
                a.face_of_corner[4 * at.crossing + at.slot] = f;
                Endpoint out{at.crossing, (at.slot + 1) % 4};
                at = partner(ep, code, out);
            } while (!(at.crossing == (int)c0 && at.slot == s0));
        }
    a.num_faces = nfaces;
    if (a.num_faces != V + 2)
        throw PDError("Euler check failed: " + std::to_string(a.num_faces) + " faces for " +
                      std::to_string(V) + " crossings (diagram not planar/connected)");

    // Chessboard coloring via arc adjacencies.
    a.face_color.assign(nfaces, -1);
    a.face_color[0] = 0;
    {
        std::vector<int> stack{0};
        // Precompute adjacency.
        std::vector<std::vector<int>> adj(nfaces);
        for (const auto& [label, v] : ep) {
            int f1 = a.face_of_corner[4 * v[0].crossing + v[0].slot];
            int f2 = a.face_of_corner[4 * v[1].crossing + v[1].slot];
            adj[f1].push_back(f2);
            adj[f2].push_back(f1);
        }
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int g : adj[f]) {
                if (a.face_color[g] < 0) {
                    a.face_color[g] = 1 - a.face_color[f];
                    stack.push_back(g);
                } else if (a.face_color[g] == a.face_color[f]) {
                    throw PDError("diagram is not checkerboard colorable");
                }
            }
        }
        if (std::count(a.face_color.begin(), a.face_color.end(), -1) != 0)
            throw PDError("face coloring did not reach every region");
    }

    // Strand orientation and components.  A passage is (crossing, under/over);
    // the under-strand enters at slot 0 by convention.
    a.under_component.assign(V, -1);
    a.over_component.assign(V, -1);
    a.over_in_slot.assign(V, 0);
    {
        int dense = 0;
        for (const auto& [label, v] : ep) a.arc_index[label] = dense++;
        a.arc_component.assign(dense, -1);

        auto passage_visited = [&](int c, bool over) {
            return over ? a.over_component[c] >= 0 : a.under_component[c] >= 0;
        };
        int comp = 0;
        while (true) {
            // Prefer an unvisited under-passage (its direction is pinned).
            int sc = -1;
            bool sover = false;
            for (std::size_t c = 0; c < V && sc < 0; ++c)
                if (!passage_visited(c, false)) sc = (int)c;
            if (sc < 0)
                for (std::size_t c = 0; c < V && sc < 0; ++c)
                    if (!passage_visited(c, true)) {
                        sc = (int)c;
                        sover = true;
                    }
            if (sc < 0) break;
            int in_slot = sover ? 1 : 0; // free choice for an all-over component
            int c = sc;
            bool over = sover;
            int s_in = in_slot;
            do {
                if (over) {
                    a.over_component[c] = comp;
                    a.over_in_slot[c] = s_in;
                } else {
                    if (s_in != 0)
                        throw PDError("under-strand enters a crossing at slot " +
                                      std::to_string(s_in) + "; slot 0 expected");
                    a.under_component[c] = comp;
                }
                int s_out = (s_in + 2) % 4;
                a.arc_component[a.arc_index.at(code.crossings[c][s_out])] = comp;
                Endpoint nxt = partner(ep, code, {c, s_out});
                c = nxt.crossing;
                s_in = nxt.slot;
                over = (s_in % 2 == 1);
                if (!over && s_in == 2)
                    throw PDError("arc runs into the outgoing under slot; malformed PD code");
                if ((over && passage_visited(c, true)) || (!over && passage_visited(c, false))) {
                    if (!(c == sc && over == sover && s_in == in_slot))
                        throw PDError("strand closure is inconsistent");
                }
            } while (!(c == sc && over == sover && s_in == in_slot));
            ++comp;
        }
        a.num_components = comp;

        // Renumber components by their smallest arc label.
        std::map<int, int> smallest; // comp -> label
        for (const auto& [label, idx] : a.arc_index) {
            int cmp = a.arc_component[idx];
            if (!smallest.count(cmp)) smallest[cmp] = label;
            smallest[cmp] = std::min(smallest[cmp], label);
        }
        std::vector<std::pair<int, int>> order; // (label, comp)
        for (auto& [cmp, label] : smallest) order.push_back({label, cmp});
        std::sort(order.begin(), order.end());
        std::vector<int> remap(comp);
        for (std::size_t k = 0; k < order.size(); ++k) remap[order[k].second] = (int)k;
        for (auto& x : a.under_component) x = remap[x];
        for (auto& x : a.over_component) x = remap[x];
        for (auto& x : a.arc_component) x = remap[x];
    }
    return a;
}

namespace {

// Type of a crossing for color X: +1 when the X-colored quadrants are the
// pair touching rays 0-1 and 2-3 (counterclockwise from the under-strand),
// -1 otherwise.
int eta(const DiagramAnalysis& a, std::size_t c, int color) {
    return a.corner_color(c, 0) == color ? +1 : -1;
}

// Gram matrix on the regions of one color, one region deleted.
IntMatrix goeritz_gram(const DiagramAnalysis& a, int color, int deleted_face) {
    std::vector<int> index(a.num_faces, -1);
    int n = 0;
    for (std::size_t f = 0; f < a.num_faces; ++f)
        if (a.face_color[f] == color && (int)f != deleted_face) index[f] = n++;
    IntMatrix full(n, n);
    for (std::size_t c = 0; c < a.code.crossings.size(); ++c) {
        int j0 = a.corner_color(c, 0) == color ? 0 : 1;
        int u = a.corner_face(c, j0);
        int v = a.corner_face(c, j0 + 2);
        long e = eta(a, c, color);
        if (u == v) continue;
        int iu = index[u], iv = index[v];
        if (iu >= 0) full(iu, iu) += e;
        if (iv >= 0) full(iv, iv) += e;
        if (iu >= 0 && iv >= 0) {
            full(iu, iv) -= e;
            full(iv, iu) -= e;
        }
    }
    return full;
}

int smallest_arc_label(const PDCode& code) {
    int best = code.crossings[0][0];
    for (const auto& t : code.crossings)
        for (int s = 0; s < 4; ++s) best = std::min(best, t[s]);
    return best;
}

// The face of the given color flanking the lowest-labeled arc.
int deleted_region(const DiagramAnalysis& a, int color) {
    auto ep = endpoints_of(a.code);
    int label = smallest_arc_label(a.code);
    for (const auto& e : ep.at(label)) {
        int f = a.face_of_corner[4 * e.crossing + e.slot];
        if (a.face_color[f] == color) return f;
    }
    throw std::logic_error("arc must border one region of each color");
}

std::vector<int> full_orientation(const DiagramAnalysis& a, const std::vector<int>& orientation) {
    std::vector<int> eps(a.num_components, 1);
    if (!orientation.empty()) {
        if (orientation.size() != a.num_components)
            throw std::invalid_argument("orientation flags must match component count");
        for (std::size_t i = 0; i < orientation.size(); ++i) {
            if (orientation[i] != 1 && orientation[i] != -1)
                throw std::invalid_argument("orientation flags must be +-1");
            eps[i] = orientation[i];
        }
    }
    return eps;
}

struct CrossingGeometry {
    int u_out; // outgoing ray of the under passage
    int o_out; // outgoing ray of the over passage
};

CrossingGeometry crossing_geometry(const DiagramAnalysis& a, std::size_t c,
                                   const std::vector<int>& eps) {
    CrossingGeometry g;
    g.u_out = eps[a.under_component[c]] > 0 ? 2 : 0;
    g.o_out = eps[a.over_component[c]] > 0 ? (a.over_in_slot[c] + 2) % 4 : a.over_in_slot[c];
    return g;
}

int crossing_sign(const CrossingGeometry& g) {
    // Positive exactly when the over out-ray is one step clockwise from the
    // under out-ray in the counterclockwise slot order.
    return g.o_out == (g.u_out + 3) % 4 ? +1 : -1;
}

// The quadrant both outgoing strands point into.
int corner_between(const CrossingGeometry& g) {
    return g.o_out == (g.u_out + 1) % 4 ? g.u_out : g.o_out;
}

// Correction term paired with the Goeritz matrix of `color`: type-II
// crossings are those whose quadrant between the two outgoing strands has
// the opposite color, weighted by the crossing type.
long gl_mu(const DiagramAnalysis& a, int color, const std::vector<int>& eps) {
    long mu = 0;
    for (std::size_t c = 0; c < a.code.crossings.size(); ++c) {
        CrossingGeometry g = crossing_geometry(a, c, eps);
        if (a.corner_color(c, corner_between(g)) != color) mu += eta(a, c, color);
    }
    return mu;
}

} // namespace

GoeritzData goeritz_from_pd(const PDCode& code) {
    auto a = analyze(code);
    GoeritzData d;
    d.white_gram = goeritz_gram(a, 0, deleted_region(a, 0));
    d.black_gram = goeritz_gram(a, 1, deleted_region(a, 1));
    Integer dw = abs(determinant(d.white_gram));
    Integer db = abs(determinant(d.black_gram));
    if (dw != db) throw std::logic_error("the two Goeritz matrices must have equal |det|");
    d.determinant = dw;
    d.nullity_zero = dw != 0;
    return d;
}

long signature_gl(const PDCode& code, const std::vector<int>& orientation) {
    auto a = analyze(code);
    auto eps = full_orientation(a, orientation);
    // sig(G_X) - mu_X; both colors must give the same answer.
    long results[2];
    for (int color = 0; color < 2; ++color) {
        IntMatrix g = goeritz_gram(a, color, deleted_region(a, color));
        long sig = inertia(g).signature();
        results[color] = sig - gl_mu(a, color, eps);
    }
    if (results[0] != results[1])
        throw std::logic_error("Gordon-Litherland signatures disagree between colorings");
    return results[0];
}

GoeritzData goeritz_with_signature(const PDCode& code, const std::vector<int>& orientation) {
    GoeritzData d = goeritz_from_pd(code);
    auto a = analyze(code);
    auto eps = full_orientation(a, orientation);
    d.signature = signature_gl(code, orientation);
    d.gl_correction = gl_mu(a, 0, eps);
    return d;
}

std::pair<Integer, bool> determinant_and_nullity(const GoeritzData& data) {
    return {data.determinant, data.nullity_zero};
}

PDCode mirror(const PDCode& code) {
    auto a = analyze(code);
    PDCode m;
    for (std::size_t c = 0; c < code.crossings.size(); ++c) {
        int s0 = a.over_in_slot[c];
        std::array<int, 4> t;
        for (int k = 0; k < 4; ++k) t[k] = code.crossings[c][(s0 + k) % 4];
        m.crossings.push_back(t);
    }
    return m;
}

std::map<std::pair<int, int>, long> linking_numbers(const PDCode& code,
                                                    const std::vector<int>& orientation) {
    auto a = analyze(code);
    auto eps = full_orientation(a, orientation);
    std::map<std::pair<int, int>, long> twice;
    for (std::size_t i = 0; i < a.num_components; ++i)
        for (std::size_t j = i + 1; j < a.num_components; ++j) twice[{(int)i, (int)j}] = 0;
    for (std::size_t c = 0; c < code.crossings.size(); ++c) {
        int cu = a.under_component[c], co = a.over_component[c];
        if (cu == co) continue;
        auto key = std::minmax(cu, co);
        twice[{key.first, key.second}] += crossing_sign(crossing_geometry(a, c, eps));
    }
    std::map<std::pair<int, int>, long> lk;
    for (const auto& [k, v] : twice) {
        if (v % 2 != 0) throw std::logic_error("inter-component crossing signs must sum evenly");
        lk[k] = v / 2;
    }
    return lk;
}

std::vector<long> quasi_orientation_signatures(const PDCode& code) {
    auto a = analyze(code);
    std::vector<long> sigs;
    const std::size_t k = a.num_components;
    for (std::size_t mask = 0; mask < (std::size_t{1} << (k - 1)); ++mask) {
        std::vector<int> eps(k, 1);
        for (std::size_t i = 1; i < k; ++i)
            if (mask & (std::size_t{1} << (i - 1))) eps[i] = -1;
        sigs.push_back(signature_gl(code, eps));
    }
    std::sort(sigs.begin(), sigs.end());
    return sigs;
}

} // namespace ulb
