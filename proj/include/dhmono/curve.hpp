#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dhmono/heisenberg.hpp"
#include "dhmono/rational.hpp"
#include "dhmono/reps.hpp"

namespace dhmono {

// Combinatorial model of the hyperelliptic double cover. Branch points sit at
// 1..2g+2 on the real axis, branch cut C_i is the segment [2i-1, 2i], and the
// two sheets are glued along the cuts. Loops are drawn as piecewise-linear
// curves with exact rational coordinates:
//
//   L_ij starts just left of i, runs along a cruise height above the axis to
//   just right of j, dipping below the axis under every intermediate branch
//   point, then returns once along a deep line below the axis. The traversal
//   is clockwise and the returning (lower) arc carries the upper-sheet label.
//
// Sheet labels change exactly at axis crossings that land inside a cut; each
// such event multiplies the transported coefficient vector by the cut's
// passing transformation (upper sheet -> lower sheet) or its inverse (lower ->
// upper). Cruise heights, dip depths and dip widths are all distinct across
// loops, so curve intersections are transversal crossings of a vertical piece
// with a horizontal piece and are enumerated exactly.

struct LoopSpec {
    int i;
    int j;

    friend bool operator==(const LoopSpec& a, const LoopSpec& b) { return a.i == b.i && a.j == b.j; }
    friend bool operator!=(const LoopSpec& a, const LoopSpec& b) { return !(a == b); }
    friend bool operator<(const LoopSpec& a, const LoopSpec& b) {
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    }
    std::string label() const { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }
};

struct Piece {
    bool vertical;
    Rat fixed; // x for vertical pieces, y for horizontal ones
    Rat lo, hi;
    int dir;   // +1 traversal runs lo -> hi, -1 the other way
    int sheet; // 0 = upper sheet, 1 = lower sheet
    int pref;  // cut-crossing events that happen before this piece
};

struct LoopGeometry {
    LoopSpec spec;
    int rank = 0;
    std::vector<int> events; // cut indices (1-based) in traversal order
    std::vector<Piece> pieces;
};

struct LoopCrossing {
    int pref_a; // events of the first loop before the crossing point
    int pref_b;
    int sign;   // right-hand rule, first loop against second
};

class CurveDiagram {
public:
    static const CurveDiagram& get(int g) {
        static std::map<int, std::unique_ptr<CurveDiagram>> cache;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(g);
        if (it == cache.end())
            it = cache.emplace(g, std::unique_ptr<CurveDiagram>(new CurveDiagram(g))).first;
        return *it->second;
    }

    int genus() const { return g_; }
    int points() const { return 2 * g_ + 2; }
    int cuts() const { return g_ + 1; }
    int loop_count() const { return static_cast<int>(loops_.size()); }

    int rank_of(int i, int j) const {
        auto it = rank_.find({i, j});
        if (it == rank_.end())
            throw std::invalid_argument("no loop " + LoopSpec{i, j}.label() + " at genus " + std::to_string(g_));
        return it->second;
    }

    const LoopGeometry& loop(int rank) const { return loops_[static_cast<std::size_t>(rank)]; }
    const LoopGeometry& loop(int i, int j) const { return loops_[static_cast<std::size_t>(rank_of(i, j))]; }

    // crossings of loop ra against loop rb, in deterministic order
    std::vector<LoopCrossing> crossings(int ra, int rb) const {
        if (ra == rb) return {};
        bool flip = ra > rb;
        const auto& base = cross_.at({flip ? rb : ra, flip ? ra : rb});
        if (!flip) return base;
        std::vector<LoopCrossing> out;
        out.reserve(base.size());
        for (const auto& c : base) out.push_back({c.pref_b, c.pref_a, -c.sign});
        return out;
    }

private:
    explicit CurveDiagram(int g) : g_(g) {
        if (g < 2) throw std::invalid_argument("diagram needs genus >= 2");
        int pts = 2 * g + 2;
        std::vector<LoopSpec> order;
        for (int span = 1; span <= pts - 1; ++span)
            for (int i = 1; i + span <= pts; ++i) order.push_back({i, i + span});
        int n_loops = static_cast<int>(order.size());
        Rat eps_a(1, 8 * (n_loops + 1));
        Rat eps_w(1, 16 * (n_loops + 1));
        loops_.reserve(order.size());
        for (int r = 0; r < n_loops; ++r) {
            const LoopSpec& sp = order[static_cast<std::size_t>(r)];
            rank_[{sp.i, sp.j}] = r;
            loops_.push_back(build_loop(sp, r, eps_a, eps_w, n_loops));
        }
        for (int a = 0; a < n_loops; ++a)
            for (int b = a + 1; b < n_loops; ++b)
                cross_[{a, b}] = enumerate_crossings(loops_[static_cast<std::size_t>(a)],
                                                     loops_[static_cast<std::size_t>(b)]);
    }

    LoopGeometry build_loop(const LoopSpec& sp, int rank, const Rat& eps_a, const Rat& eps_w,
                            int n_loops) const {
        LoopGeometry lg;
        lg.spec = sp;
        lg.rank = rank;
        Rat a = Rat(sp.i) - Rat(1, 4) - Rat(rank) * eps_a;
        Rat b = Rat(sp.j) + Rat(1, 4) + Rat(rank) * eps_a;
        Rat w = Rat(1, 8) + Rat(rank) * eps_w;
        Rat top = Rat(1 + rank);
        Rat dip = Rat(-(1 + rank)) / 2;
        Rat bot = Rat(-(n_loops + 2 + rank));

        int sheet = 0;
        int pref = 0;
        auto cross_axis = [&](int cut) {
            if (cut > 0) {
                lg.events.push_back(cut);
                ++pref;
                sheet ^= 1;
            }
        };
        auto push_v = [&](const Rat& x, Rat y0, Rat y1, int dir) {
            if (y0 > y1) std::swap(y0, y1);
            lg.pieces.push_back({true, x, std::move(y0), std::move(y1), dir, sheet, pref});
        };
        auto push_h = [&](const Rat& y, Rat x0, Rat x1, int dir) {
            if (x0 > x1) std::swap(x0, x1);
            lg.pieces.push_back({false, y, std::move(x0), std::move(x1), dir, sheet, pref});
        };

        cross_axis(sp.i % 2 == 0 ? sp.i / 2 : 0);
        push_v(a, Rat(0), top, +1);
        Rat cursor = a;
        for (int k = sp.i + 1; k <= sp.j - 1; ++k) {
            Rat xl = Rat(k) - w, xr = Rat(k) + w;
            push_h(top, cursor, xl, +1);
            push_v(xl, top, Rat(0), -1);
            cross_axis(k % 2 == 0 ? k / 2 : 0);
            push_v(xl, Rat(0), dip, -1);
            push_h(dip, xl, xr, +1);
            push_v(xr, dip, Rat(0), +1);
            cross_axis(k % 2 == 1 ? (k + 1) / 2 : 0);
            push_v(xr, Rat(0), top, +1);
            cursor = xr;
        }
        push_h(top, cursor, b, +1);
        push_v(b, top, Rat(0), -1);
        cross_axis(sp.j % 2 == 1 ? (sp.j + 1) / 2 : 0);
        push_v(b, Rat(0), bot, -1);
        push_h(bot, b, a, -1);
        push_v(a, bot, Rat(0), +1);

        if (sheet != 0)
            throw std::logic_error("loop " + sp.label() + " does not close on its sheet");
        return lg;
    }

    static std::vector<LoopCrossing> enumerate_crossings(const LoopGeometry& A, const LoopGeometry& B) {
        std::vector<LoopCrossing> out;
        for (const Piece& pa : A.pieces)
            for (const Piece& pb : B.pieces) {
                if (pa.vertical == pb.vertical) continue;
                const Piece& v = pa.vertical ? pa : pb;
                const Piece& h = pa.vertical ? pb : pa;
                if (!(h.lo < v.fixed && v.fixed < h.hi)) continue;
                if (!(v.lo < h.fixed && h.fixed < v.hi)) continue;
                if (pa.sheet != pb.sheet) continue; // images cross, the lifts do not
                int sign = pa.vertical ? -(pa.dir * pb.dir) : (pa.dir * pb.dir);
                out.push_back({pa.pref, pb.pref, sign});
            }
        return out;
    }

    int g_;
    std::vector<LoopGeometry> loops_;
    std::map<std::pair<int, int>, int> rank_;
    std::map<std::pair<int, int>, std::vector<LoopCrossing>> cross_;
};

// Branch-point configuration: one passing transformation per cut.
struct BranchConfig {
    int g = 0;
    int n = 0;
    std::vector<DihedralElement> passing; // passing[m] belongs to cut m+1
    std::string preset;                   // empty for custom configurations
    bool identity_warning = false;        // fewer than two identity cuts

    int cuts() const { return g + 1; }
    int points() const { return 2 * g + 2; }

    const DihedralElement& cut_passing(int cut) const { // 1-based
        return passing.at(static_cast<std::size_t>(cut - 1));
    }
};

inline BranchConfig make_config(int g, int n, std::vector<DihedralElement> passing,
                                std::string preset = "") {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("n must be odd and >= 3 (got " + std::to_string(n) + ")");
    if (static_cast<int>(passing.size()) != g + 1)
        throw std::invalid_argument("need one passing transformation per cut (g+1 of them)");
    BranchConfig cfg;
    cfg.g = g;
    cfg.n = n;
    cfg.passing = std::move(passing);
    cfg.preset = std::move(preset);
    int identities = 0;
    for (const auto& p : cfg.passing)
        if (p == dh_identity(n)) ++identities;
    cfg.identity_warning = identities < 2;
    return cfg;
}

// The three named configurations. All require g >= 6 so at least two branch
// cuts carry the identity.
inline BranchConfig preset_config(int g, int n, const std::string& name) {
    if (g < 6)
        throw std::invalid_argument("preset configurations need genus >= 6 "
                                    "(two identity branch cuts); got g = " + std::to_string(g));
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("n must be odd and >= 3 (got " + std::to_string(n) + ")");
    DihedralElement s = dh_sigma(n), a = dh_a(n), al = dh_alpha(n), e = dh_identity(n);
    std::vector<DihedralElement> p;
    if (name == "irr")
        p = {s, dh_mul(a, s), dh_mul(al, s), a, al};
    else if (name == "span")
        p = {a, al, dh_mul(a, s), dh_mul(al, s), s};
    else if (name == "span-bc-equal")
        p = {a, al, e, dh_mul(a, s), dh_mul(al, s), s};
    else
        throw std::invalid_argument("unknown preset '" + name + "' (irr|span|span-bc-equal)");
    while (static_cast<int>(p.size()) < g + 1) p.push_back(e);
    return make_config(g, n, std::move(p), name);
}

// per-cut matrices of the passing transformations on W_u
inline std::vector<CycMatrix> passing_matrices(const BranchConfig& cfg, const CharOrbit& u) {
    OrbitRep rep(u);
    std::vector<CycMatrix> out;
    out.reserve(cfg.passing.size());
    for (const auto& p : cfg.passing) out.push_back(rep.matrix(p));
    return out;
}

// monodromy of L_ij in DH_n: alternating product of passing transformations
// over the loop's cut-crossing events, later crossings acting on the left
inline DihedralElement group_monodromy(const BranchConfig& cfg, int i, int j) {
    const CurveDiagram& dia = CurveDiagram::get(cfg.g);
    const LoopGeometry& lg = dia.loop(i, j);
    DihedralElement m = dh_identity(cfg.n);
    bool from_upper = true;
    for (int cut : lg.events) {
        const DihedralElement& p = cfg.cut_passing(cut);
        m = from_upper ? dh_mul(p, m) : dh_mul(dh_inverse(p), m);
        from_upper = !from_upper;
    }
    return m;
}

enum class MonodromyKind { Identity, Reflection, Rotation };

inline const char* to_string(MonodromyKind k) {
    switch (k) {
        case MonodromyKind::Identity: return "identity";
        case MonodromyKind::Reflection: return "reflection";
        default: return "rotation";
    }
}

struct MonodromyClass {
    MonodromyKind kind;
    CycMatrix matrix;
    DihedralElement group_element;
};

inline MonodromyClass loop_monodromy(const BranchConfig& cfg, const CharOrbit& u, int i, int j) {
    DihedralElement m = group_monodromy(cfg, i, j);
    OrbitRep rep(u);
    CycMatrix mat = rep.matrix(m);
    MonodromyKind kind;
    if (mat.is_identity())
        kind = MonodromyKind::Identity;
    else if (m.eps == -1)
        kind = MonodromyKind::Reflection;
    else
        kind = MonodromyKind::Rotation;
    return {kind, std::move(mat), std::move(m)};
}

struct FixedVectors {
    MonodromyKind kind;
    // Identity: the whole plane (both basis vectors); Reflection: the line
    // spanned by (1+M)v+; Rotation: empty
    std::vector<std::vector<CycScalar>> vectors;
};

inline FixedVectors fixed_vector(const MonodromyClass& mc) {
    const CyclotomicField* f = mc.matrix.field();
    int d = mc.matrix.rows();
    FixedVectors fv;
    fv.kind = mc.kind;
    if (mc.kind == MonodromyKind::Identity) {
        for (int k = 0; k < d; ++k) {
            std::vector<CycScalar> e(static_cast<std::size_t>(d), CycScalar::zero(f));
            e[static_cast<std::size_t>(k)] = CycScalar::one(f);
            fv.vectors.push_back(std::move(e));
        }
    } else if (mc.kind == MonodromyKind::Reflection) {
        std::vector<CycScalar> v(static_cast<std::size_t>(d), CycScalar::zero(f));
        v[0] = CycScalar::one(f);
        std::vector<CycScalar> mv = mat_vec(mc.matrix, v);
        for (int k = 0; k < d; ++k) v[static_cast<std::size_t>(k)] += mv[static_cast<std::size_t>(k)];
        fv.vectors.push_back(std::move(v));
    }
    return fv;
}

// subgroup of DH_n generated by all loop monodromies
inline std::vector<DihedralElement> image_subgroup(const BranchConfig& cfg) {
    std::vector<DihedralElement> gens;
    for (int i = 1; i <= cfg.points(); ++i)
        for (int j = i + 1; j <= cfg.points(); ++j) gens.push_back(group_monodromy(cfg, i, j));
    return dh_generate(gens);
}

} // namespace dhmono
