#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dhmono/certificate.hpp"
#include "dhmono/curve.hpp"
#include "dhmono/matrix.hpp"

namespace dhmono {

// Twisted first homology of the double cover with coefficients in W_u,
// represented by loop-like chains: a coefficient vector attached to a
// canonical loop, transported by passing matrices at cut crossings. The
// intersection pairing combines crossing signs with the invariant form
// Q((r,s),(r',s')) = rs' + r's on W_u (plain product for the trivial orbit).

struct CycleTerm {
    std::vector<CycScalar> w; // coefficient vector at the loop's start point
    LoopSpec loop;
};

struct TwistedCycle {
    std::vector<CycleTerm> terms;

    bool empty() const { return terms.empty(); }
};

inline TwistedCycle single_cycle(std::vector<CycScalar> w, int i, int j) {
    return TwistedCycle{{CycleTerm{std::move(w), LoopSpec{i, j}}}};
}

class OrbitContext;
inline bool is_cycle(const OrbitContext& ctx, const TwistedCycle& x);

// Everything pairing-related for one (configuration, orbit): monodromy
// classes and prefix transports of every canonical loop.
class OrbitContext {
public:
    OrbitContext(BranchConfig cfg, const CharOrbit& u)
        : cfg_(std::move(cfg)), u_(u), rep_(u), diagram_(&CurveDiagram::get(cfg_.g)) {
        if (cfg_.n != u.n) throw std::invalid_argument("configuration and orbit over different n");
        field_ = rep_.field();
        wdim_ = rep_.dim();
        int nl = diagram_->loop_count();
        loops_.reserve(static_cast<std::size_t>(nl));
        for (int r = 0; r < nl; ++r) {
            const LoopGeometry& lg = diagram_->loop(r);
            LoopData ld;
            ld.mc = loop_monodromy(cfg_, u_, lg.spec.i, lg.spec.j);
            CycMatrix t = CycMatrix::identity(field_, wdim_);
            ld.pref.push_back(t);
            bool from_upper = true;
            for (int cut : lg.events) {
                CycMatrix q = rep_.matrix(from_upper ? cfg_.cut_passing(cut)
                                                     : dh_inverse(cfg_.cut_passing(cut)));
                t = q * t;
                ld.pref.push_back(t);
                from_upper = !from_upper;
            }
            for (const auto& m : ld.pref) ld.pref_inv.push_back(*inverse(m));
            loops_.push_back(std::move(ld));
        }
    }

    const BranchConfig& config() const { return cfg_; }
    const CharOrbit& orbit() const { return u_; }
    const OrbitRep& rep() const { return rep_; }
    const CyclotomicField* field() const { return field_; }
    int wdim() const { return wdim_; }
    const CurveDiagram& diagram() const { return *diagram_; }
    int expected_dim() const { return u_.is_trivial() ? 2 * cfg_.g : 4 * cfg_.g - 4; }

    const MonodromyClass& monodromy(int i, int j) const {
        return loops_[static_cast<std::size_t>(diagram_->rank_of(i, j))].mc;
    }
    const CycMatrix& transport(int rank, int pref) const {
        return loops_[static_cast<std::size_t>(rank)].pref[static_cast<std::size_t>(pref)];
    }
    const CycMatrix& transport_inv(int rank, int pref) const {
        return loops_[static_cast<std::size_t>(rank)].pref_inv[static_cast<std::size_t>(pref)];
    }

    CycScalar q_form(const std::vector<CycScalar>& x, const std::vector<CycScalar>& y) const {
        if (wdim_ == 1) return x[0] * y[0];
        return x[0] * y[1] + x[1] * y[0];
    }

private:
    struct LoopData {
        MonodromyClass mc{MonodromyKind::Identity, CycMatrix(), dh_identity(3)};
        std::vector<CycMatrix> pref;
        std::vector<CycMatrix> pref_inv;
    };

    BranchConfig cfg_;
    CharOrbit u_;
    OrbitRep rep_;
    const CurveDiagram* diagram_;
    const CyclotomicField* field_;
    int wdim_;
    std::vector<LoopData> loops_;
};

// the cycle condition: each term's vector is fixed by its loop's monodromy
inline bool is_cycle(const OrbitContext& ctx, const TwistedCycle& x) {
    for (const CycleTerm& t : x.terms) {
        const MonodromyClass& mc = ctx.monodromy(t.loop.i, t.loop.j);
        if (mat_vec(mc.matrix, t.w) != t.w) return false;
    }
    return true;
}

// signed sum over same-sheet crossings of Q(transported x, transported y);
// terms on the same loop are parallel and never intersect
inline CycScalar intersection_pairing(const OrbitContext& ctx, const TwistedCycle& x,
                                      const TwistedCycle& y) {
    CycScalar total = CycScalar::zero(ctx.field());
    const CurveDiagram& dia = ctx.diagram();
    for (const CycleTerm& tx : x.terms)
        for (const CycleTerm& ty : y.terms) {
            if (tx.loop == ty.loop) continue;
            int ra = dia.rank_of(tx.loop.i, tx.loop.j);
            int rb = dia.rank_of(ty.loop.i, ty.loop.j);
            for (const LoopCrossing& c : dia.crossings(ra, rb)) {
                std::vector<CycScalar> wx = mat_vec(ctx.transport(ra, c.pref_a), tx.w);
                std::vector<CycScalar> wy = mat_vec(ctx.transport(rb, c.pref_b), ty.w);
                CycScalar q = ctx.q_form(wx, wy);
                if (c.sign > 0)
                    total += q;
                else
                    total -= q;
            }
        }
    return total;
}

// candidate cycles v_ij L_ij in (i, j) order: two for identity monodromy, the
// invariant line for reflections, none for rotations
inline std::vector<TwistedCycle> candidate_cycles(const OrbitContext& ctx) {
    std::vector<TwistedCycle> out;
    int pts = ctx.config().points();
    for (int i = 1; i <= pts; ++i)
        for (int j = i + 1; j <= pts; ++j) {
            FixedVectors fv = fixed_vector(ctx.monodromy(i, j));
            for (auto& v : fv.vectors) out.push_back(single_cycle(std::move(v), i, j));
        }
    return out;
}

struct HomologyBasis {
    std::vector<TwistedCycle> cycles;
    CycMatrix gram;       // gram[m][k] = pairing(cycles[m], cycles[k])
    CycMatrix coord_mat;  // inverse of gram^T, maps pairing vectors to coordinates
    int target_dim = 0;
    bool complete = false;
};

struct SpanAnalysis {
    HomologyBasis basis;
    int candidate_count = 0;
    int span_rank = 0; // rank of the full candidate pairing matrix
};

// All pairwise pairings of the candidate set; the pairing vector against the
// whole candidate family embeds homology classes faithfully once the form is
// nondegenerate, so row rank measures linear independence of cycles.
inline SpanAnalysis analyze_candidates(const OrbitContext& ctx, const std::vector<TwistedCycle>& cand,
                                       int target_dim) {
    SpanAnalysis sa;
    HomologyBasis& hb = sa.basis;
    hb.target_dim = target_dim;
    int m = static_cast<int>(cand.size());
    sa.candidate_count = m;

    CycMatrix p(ctx.field(), m, m);
    for (int r = 0; r < m; ++r)
        for (int c = r + 1; c < m; ++c) {
            CycScalar v = intersection_pairing(ctx, cand[static_cast<std::size_t>(r)],
                                               cand[static_cast<std::size_t>(c)]);
            p.at(r, c) = v;
            p.at(c, r) = -v;
        }

    RowEchelon ech(ctx.field(), m);
    std::vector<int> selected;
    for (int r = 0; r < m; ++r) {
        bool grew = ech.insert(p.row(r));
        if (grew && static_cast<int>(selected.size()) < hb.target_dim) selected.push_back(r);
    }
    sa.span_rank = ech.rank();

    int d = static_cast<int>(selected.size());
    hb.gram = CycMatrix(ctx.field(), d, d);
    for (int r = 0; r < d; ++r) {
        hb.cycles.push_back(cand[static_cast<std::size_t>(selected[static_cast<std::size_t>(r)])]);
        for (int c = 0; c < d; ++c)
            hb.gram.at(r, c) = p.at(selected[static_cast<std::size_t>(r)],
                                    selected[static_cast<std::size_t>(c)]);
    }
    if (d == hb.target_dim) {
        auto inv = inverse(hb.gram.transpose());
        if (inv) {
            hb.coord_mat = std::move(*inv);
            hb.complete = true;
        }
    }
    return sa;
}

inline SpanAnalysis analyze_span(const OrbitContext& ctx) {
    return analyze_candidates(ctx, candidate_cycles(ctx), ctx.expected_dim());
}

inline HomologyBasis build_basis(const OrbitContext& ctx) { return analyze_span(ctx).basis; }

// coordinates of a cycle with respect to the basis: solve gram^T c = pairings
inline std::vector<CycScalar> coords(const OrbitContext& ctx, const HomologyBasis& hb,
                                     const TwistedCycle& x) {
    if (!hb.complete) throw std::logic_error("coordinates need a complete homology basis");
    int d = static_cast<int>(hb.cycles.size());
    CycMatrix p(ctx.field(), d, 1);
    for (int m = 0; m < d; ++m)
        p.at(m, 0) = intersection_pairing(ctx, x, hb.cycles[static_cast<std::size_t>(m)]);
    CycMatrix c = hb.coord_mat * p;
    std::vector<CycScalar> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int m = 0; m < d; ++m) out.push_back(c.at(m, 0));
    return out;
}

// cellular chain complex of the double cover with local coefficients:
// vertices at branch points and infinity, edges over the real-axis segments,
// two 2-cells per half-plane sheet. Completely independent of the loop
// diagram; used as the dimension oracle.
struct OracleDims {
    int h0 = 0;
    int h1 = 0;
    int h2 = 0;
};

inline OracleDims dimension_oracle(const BranchConfig& cfg, const CharOrbit& u) {
    OrbitRep rep(u);
    const CyclotomicField* f = rep.field();
    int wd = rep.dim();
    int g = cfg.g;
    int pts = 2 * g + 2;
    int segs = 2 * g + 3; // 0: [inf,1], m: [m, m+1] for 1..2g+1, 2g+2: [2g+2, inf]

    auto seg_cut = [&](int m) -> int { // 0 when the segment is not a branch cut
        if (m >= 1 && m <= 2 * g + 1 && m % 2 == 1) return (m + 1) / 2;
        return 0;
    };
    auto point_cut = [&](int p) -> int { return (p + 1) / 2; }; // cut owning branch point p

    std::vector<CycMatrix> q, qinv;
    q.reserve(cfg.passing.size());
    for (const auto& pt : cfg.passing) {
        q.push_back(rep.matrix(pt));
        qinv.push_back(rep.matrix(dh_inverse(pt)));
    }

    int faces = 4;          // (half-plane U/L) x sheet
    int edges = segs * 2;   // each segment has two lifts
    int verts = pts + 2;    // branch points once, infinity twice

    auto edge_index = [&](int m, int t) { return 2 * m + t; };
    auto vert_index = [&](int p, int t) { // p = 1..pts branch, p = 0 means infinity
        if (p == 0) return pts + t;
        return p - 1;
    };

    CycMatrix d2(f, edges * wd, faces * wd);
    CycMatrix d1(f, verts * wd, edges * wd);

    auto add_block = [&](CycMatrix& m, int br, int bc, const CycMatrix& blk, int sgn) {
        for (int r = 0; r < wd; ++r)
            for (int c = 0; c < wd; ++c) {
                if (blk.at(r, c).is_zero()) continue;
                if (sgn > 0)
                    m.at(br * wd + r, bc * wd + c) += blk.at(r, c);
                else
                    m.at(br * wd + r, bc * wd + c) -= blk.at(r, c);
            }
    };
    CycMatrix id = CycMatrix::identity(f, wd);

    // boundary of the four faces; face index: 2*halfplane + sheet, U = 0
    for (int s = 0; s < 2; ++s) {
        int fu = 0 * 2 + s;
        for (int m = 0; m < segs; ++m) add_block(d2, edge_index(m, s), fu, id, +1);
        int fl = 1 * 2 + s;
        for (int m = 0; m < segs; ++m) {
            int c = seg_cut(m);
            if (c == 0) {
                add_block(d2, edge_index(m, s), fl, id, -1);
            } else if (s == 0) {
                // below the cut on the upper sheet; the rim above is the lower sheet
                add_block(d2, edge_index(m, 1), fl, q[static_cast<std::size_t>(c - 1)], -1);
            } else {
                add_block(d2, edge_index(m, 0), fl, qinv[static_cast<std::size_t>(c - 1)], -1);
            }
        }
    }

    // boundary of edges: head minus tail, transported into the vertex chart
    // (vertex chart = approach from above on sheet 0; a lift carrying sheet
    // label 1 reaches it through the vertex's own cut)
    auto vertex_transport = [&](int p, int t) -> const CycMatrix& {
        return t == 1 ? qinv[static_cast<std::size_t>(point_cut(p) - 1)] : id;
    };
    for (int m = 0; m < segs; ++m)
        for (int t = 0; t < 2; ++t) {
            int e = edge_index(m, t);
            if (m == 0) { // [infinity, 1]
                add_block(d1, vert_index(0, t), e, id, -1);
                add_block(d1, vert_index(1, 0), e, vertex_transport(1, t), +1);
            } else if (m == 2 * g + 2) { // [2g+2, infinity]
                add_block(d1, vert_index(pts, 0), e, vertex_transport(pts, t), -1);
                add_block(d1, vert_index(0, t), e, id, +1);
            } else { // [m, m+1]
                add_block(d1, vert_index(m, 0), e, vertex_transport(m, t), -1);
                add_block(d1, vert_index(m + 1, 0), e, vertex_transport(m + 1, t), +1);
            }
        }

    if (!(d1 * d2).is_zero()) throw std::logic_error("oracle complex is not a complex");

    int r2 = rank(d2);
    int r1 = rank(d1);
    OracleDims dims;
    dims.h0 = verts * wd - r1;
    dims.h1 = edges * wd - r1 - r2;
    dims.h2 = faces * wd - r2;
    return dims;
}

// rank of the span of all candidate cycles against the oracle dimension
inline Certificate span_certificate(const OrbitContext& ctx) {
    Stopwatch sw;
    Certificate cert;
    cert.check = "span";
    cert.params = {{"g", ctx.config().g},
                   {"n", ctx.config().n},
                   {"preset", ctx.config().preset},
                   {"orbit", ctx.orbit().label()}};

    SpanAnalysis sa = analyze_span(ctx);
    OracleDims oracle = dimension_oracle(ctx.config(), ctx.orbit());

    // the candidate span must fill the homology, and the homology must have
    // the expected dimension; a mismatch flags a configuration the spanning
    // argument does not cover
    bool pass = sa.span_rank == oracle.h1 && sa.basis.complete &&
                sa.span_rank == sa.basis.target_dim;
    cert.status = pass ? CertStatus::Pass : CertStatus::Fail;
    nlohmann::json witness_basis = nlohmann::json::array();
    for (const auto& cyc : sa.basis.cycles)
        witness_basis.push_back({{"i", cyc.terms[0].loop.i}, {"j", cyc.terms[0].loop.j}});
    cert.witness = {{"candidates", sa.candidate_count},
                    {"span_rank", sa.span_rank},
                    {"oracle_h1", oracle.h1},
                    {"oracle_h0", oracle.h0},
                    {"independent_subset", witness_basis}};
    cert.runtime_ms = sw.ms();
    return cert;
}

} // namespace dhmono
