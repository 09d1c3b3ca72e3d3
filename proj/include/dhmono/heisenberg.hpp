#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace dhmono {

// Finite Heisenberg group H_n on mu_n x Z/n x (Z/n)^ and its dihedral
// extension DH_n = mu_2 |x H_n. The mu_n coordinate is stored as the exponent
// of the fixed generator gamma; characters are identified with Z/n through
// alpha(k) = gamma^k, so all arithmetic is exponent arithmetic mod n.

inline int mod_n(long v, int n) {
    long r = v % n;
    if (r < 0) r += n;
    return static_cast<int>(r);
}

struct HeisenbergElement {
    int n;
    int lambda; // exponent of gamma in mu_n
    int a;      // Z/n
    int alpha;  // character exponent

    HeisenbergElement(int n_, long l, long a_, long al)
        : n(n_), lambda(mod_n(l, n_)), a(mod_n(a_, n_)), alpha(mod_n(al, n_)) {}

    friend bool operator==(const HeisenbergElement& x, const HeisenbergElement& y) {
        return x.n == y.n && x.lambda == y.lambda && x.a == y.a && x.alpha == y.alpha;
    }
    friend bool operator!=(const HeisenbergElement& x, const HeisenbergElement& y) { return !(x == y); }
};

struct DihedralElement {
    int eps; // +1 or -1
    HeisenbergElement h;

    DihedralElement(int e, HeisenbergElement he) : eps(e), h(std::move(he)) {
        if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
    }

    int n() const { return h.n; }

    friend bool operator==(const DihedralElement& x, const DihedralElement& y) {
        return x.eps == y.eps && x.h == y.h;
    }
    friend bool operator!=(const DihedralElement& x, const DihedralElement& y) { return !(x == y); }

    friend bool operator<(const DihedralElement& x, const DihedralElement& y) {
        return std::tie(x.eps, x.h.lambda, x.h.a, x.h.alpha) <
               std::tie(y.eps, y.h.lambda, y.h.a, y.h.alpha);
    }

    std::string to_string() const {
        return "(" + std::to_string(eps) + ", g^" + std::to_string(h.lambda) + ", " +
               std::to_string(h.a) + ", a^" + std::to_string(h.alpha) + ")";
    }
};

inline DihedralElement dh_identity(int n) { return DihedralElement(1, HeisenbergElement(n, 0, 0, 0)); }
// the three standard generators
inline DihedralElement dh_sigma(int n) { return DihedralElement(-1, HeisenbergElement(n, 0, 0, 0)); }
inline DihedralElement dh_a(int n) { return DihedralElement(1, HeisenbergElement(n, 0, 1, 0)); }
inline DihedralElement dh_alpha(int n) { return DihedralElement(1, HeisenbergElement(n, 0, 0, 1)); }

// (eps,l,a,al)*(eps',l',a',al') = (eps eps', l l' al'^eps(a), a + eps a', al al'^eps)
inline DihedralElement dh_mul(const DihedralElement& x, const DihedralElement& y) {
    if (x.n() != y.n()) throw std::invalid_argument("dihedral elements over different n");
    int n = x.n();
    long lambda = static_cast<long>(x.h.lambda) + y.h.lambda +
                  static_cast<long>(x.eps) * y.h.alpha * x.h.a;
    long a = static_cast<long>(x.h.a) + static_cast<long>(x.eps) * y.h.a;
    long alpha = static_cast<long>(x.h.alpha) + static_cast<long>(x.eps) * y.h.alpha;
    return DihedralElement(x.eps * y.eps, HeisenbergElement(n, lambda, a, alpha));
}

inline DihedralElement dh_inverse(const DihedralElement& x) {
    int n = x.n();
    long lambda = static_cast<long>(x.h.alpha) * x.h.a - x.h.lambda;
    return DihedralElement(x.eps, HeisenbergElement(n, lambda,
                                                    -static_cast<long>(x.eps) * x.h.a,
                                                    -static_cast<long>(x.eps) * x.h.alpha));
}

inline DihedralElement dh_pow(DihedralElement x, long k) {
    if (k < 0) { x = dh_inverse(x); k = -k; }
    DihedralElement r = dh_identity(x.n());
    while (k) {
        if (k & 1) r = dh_mul(r, x);
        x = dh_mul(x, x);
        k >>= 1;
    }
    return r;
}

inline DihedralElement heis(int n, long lambda, long a, long alpha) {
    return DihedralElement(1, HeisenbergElement(n, lambda, a, alpha));
}

// closure under multiplication and inversion, breadth-first, sorted output
inline std::vector<DihedralElement> dh_generate(const std::vector<DihedralElement>& gens) {
    if (gens.empty()) throw std::invalid_argument("dh_generate needs at least one generator");
    int n = gens[0].n();
    for (const auto& g : gens)
        if (g.n() != n) throw std::invalid_argument("generators over different n");
    std::set<DihedralElement> seen;
    std::vector<DihedralElement> frontier{dh_identity(n)};
    seen.insert(frontier[0]);
    std::vector<DihedralElement> step;
    for (const auto& g : gens) {
        step.push_back(g);
        step.push_back(dh_inverse(g));
    }
    while (!frontier.empty()) {
        std::vector<DihedralElement> next;
        for (const auto& x : frontier)
            for (const auto& g : step) {
                DihedralElement y = dh_mul(x, g);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return std::vector<DihedralElement>(seen.begin(), seen.end());
}

struct AbelianizedElement {
    int eps;
    int a;
    int alpha;

    friend bool operator==(const AbelianizedElement& x, const AbelianizedElement& y) {
        return x.eps == y.eps && x.a == y.a && x.alpha == y.alpha;
    }
};

// drop the central mu_n coordinate
inline AbelianizedElement dh_quotient_abelianized(const DihedralElement& x) {
    return AbelianizedElement{x.eps, x.h.a, x.h.alpha};
}

inline AbelianizedElement ab_mul(const AbelianizedElement& x, const AbelianizedElement& y, int n) {
    return AbelianizedElement{x.eps * y.eps, mod_n(x.a + static_cast<long>(x.eps) * y.a, n),
                              mod_n(x.alpha + static_cast<long>(x.eps) * y.alpha, n)};
}

} // namespace dhmono
