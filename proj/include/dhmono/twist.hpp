#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dhmono/homology.hpp"

namespace dhmono {

// Dehn twist operators on twisted homology. The k-th power of the twist along
// L adds, for every crossing p of a cycle x with L, the chain
//
//   sign(p) * (1 + M_L + ... + M_L^{k-1}) w_p   supported on L,
//
// where w_p is x's coefficient transported to p. The power must make the
// added vector M_L-invariant: k = 1 needs identity monodromy, k = 2 allows
// reflections; rotations admit no twist action at all.

struct TwistOperator {
    int i = 0;
    int j = 0;
    int power = 0;
    CycMatrix matrix; // with respect to a fixed HomologyBasis
};

inline void require_twistable(const MonodromyClass& mc, int i, int j, int power) {
    if (power != 1 && power != 2)
        throw std::invalid_argument("twist power must be 1 or 2");
    if (mc.kind == MonodromyKind::Rotation)
        throw std::domain_error("loop " + LoopSpec{i, j}.label() +
                                " has rotation monodromy; no power of its twist acts");
    if (power == 1 && mc.kind != MonodromyKind::Identity)
        throw std::domain_error("simple twist along " + LoopSpec{i, j}.label() +
                                " needs identity monodromy (found " +
                                std::string(to_string(mc.kind)) + "); use power 2");
}

// the chain on L_ij added by the twist, with coefficient at L's start point
inline TwistedCycle twist_delta(const OrbitContext& ctx, const TwistedCycle& x, int i, int j,
                                int power) {
    const MonodromyClass& mc = ctx.monodromy(i, j);
    require_twistable(mc, i, j, power);
    const CurveDiagram& dia = ctx.diagram();
    int rl = dia.rank_of(i, j);
    CycMatrix msum = CycMatrix::identity(ctx.field(), ctx.wdim());
    if (power == 2) msum = msum + mc.matrix;

    std::vector<CycScalar> total(static_cast<std::size_t>(ctx.wdim()), CycScalar::zero(ctx.field()));
    bool nonzero = false;
    for (const CycleTerm& term : x.terms) {
        if (term.loop == LoopSpec{i, j}) continue;
        int rk = dia.rank_of(term.loop.i, term.loop.j);
        for (const LoopCrossing& c : dia.crossings(rk, rl)) {
            std::vector<CycScalar> wp = mat_vec(ctx.transport(rk, c.pref_a), term.w);
            std::vector<CycScalar> v = mat_vec(ctx.transport_inv(rl, c.pref_b), wp);
            v = mat_vec(msum, v);
            for (std::size_t k = 0; k < total.size(); ++k) {
                if (v[k].is_zero()) continue;
                if (c.sign > 0)
                    total[k] += v[k];
                else
                    total[k] -= v[k];
            }
        }
    }
    for (const auto& s : total)
        if (!s.is_zero()) nonzero = true;
    if (!nonzero) return TwistedCycle{};
    return single_cycle(std::move(total), i, j);
}

inline TwistOperator dehn_twist_matrix(const OrbitContext& ctx, const HomologyBasis& hb, int i,
                                       int j, int power) {
    if (!hb.complete) throw std::logic_error("twist matrices need a complete homology basis");
    const MonodromyClass& mc = ctx.monodromy(i, j);
    require_twistable(mc, i, j, power);
    int d = static_cast<int>(hb.cycles.size());
    const CyclotomicField* f = ctx.field();

    // coordinates of the unit chains on L_ij; the added chain is a linear
    // combination of these
    std::vector<std::vector<CycScalar>> unit_coords;
    for (int k = 0; k < ctx.wdim(); ++k) {
        std::vector<CycScalar> e(static_cast<std::size_t>(ctx.wdim()), CycScalar::zero(f));
        e[static_cast<std::size_t>(k)] = CycScalar::one(f);
        unit_coords.push_back(coords(ctx, hb, single_cycle(std::move(e), i, j)));
    }

    TwistOperator op;
    op.i = i;
    op.j = j;
    op.power = power;
    op.matrix = CycMatrix::identity(f, d);
    for (int m = 0; m < d; ++m) {
        TwistedCycle delta = twist_delta(ctx, hb.cycles[static_cast<std::size_t>(m)], i, j, power);
        if (delta.empty()) continue;
        const std::vector<CycScalar>& c = delta.terms[0].w;
        for (int k = 0; k < ctx.wdim(); ++k) {
            if (c[static_cast<std::size_t>(k)].is_zero()) continue;
            for (int r = 0; r < d; ++r) {
                const CycScalar& u = unit_coords[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
                if (!u.is_zero()) op.matrix.at(r, m) += c[static_cast<std::size_t>(k)] * u;
            }
        }
    }
    return op;
}

// Untwisted setting: trivial local system on the same double cover. The
// standard chain a_k = L_{k,k+1} supports the braid generator twists.
struct BraidSystem {
    OrbitContext ctx;
    HomologyBasis basis;                // dimension 2g
    std::vector<TwistOperator> twists;  // 2g+1 of them, power 1
};

inline BraidSystem braid_generators(int g) {
    if (g < 2) throw std::invalid_argument("braid generators need genus >= 2");
    int n = 3; // any odd n; the trivial orbit ignores the passing group
    std::vector<DihedralElement> ids(static_cast<std::size_t>(g + 1), dh_identity(n));
    OrbitContext ctx(make_config(g, n, ids), CharOrbit(n, 0, 0));

    std::vector<TwistedCycle> chains;
    for (int k = 1; k <= 2 * g + 1; ++k)
        chains.push_back(single_cycle({CycScalar::one(ctx.field())}, k, k + 1));
    SpanAnalysis sa = analyze_candidates(ctx, chains, 2 * g);
    if (!sa.basis.complete)
        throw std::logic_error("standard chains failed to span untwisted homology");

    BraidSystem bs{std::move(ctx), std::move(sa.basis), {}};
    for (int k = 1; k <= 2 * g + 1; ++k)
        bs.twists.push_back(dehn_twist_matrix(bs.ctx, bs.basis, k, k + 1, 1));
    return bs;
}

// right-to-left application of a word of operators
inline std::vector<CycScalar> apply_word(const std::vector<CycMatrix>& word,
                                         std::vector<CycScalar> x) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (it->cols() != static_cast<int>(x.size()))
            throw std::invalid_argument("apply_word dimension mismatch");
        x = mat_vec(*it, x);
    }
    return x;
}

} // namespace dhmono
