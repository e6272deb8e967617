#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lattice.hpp"

namespace mispec {

class MiStructure;
MiStructure validate_mi(FiniteLattice lat, std::vector<int> comm, std::string name = "");

// A finite modular lattice with a commutator multiplication.
// Spectrum, radicals and annihilators are computed once at validation.
class MiStructure {
public:
    MiStructure() = default;

    const FiniteLattice& lat() const { return lat_; }
    const std::string& name() const { return name_; }
    int size() const { return lat_.size(); }
    int bot() const { return lat_.bot(); }
    int top() const { return lat_.top(); }
    bool leq(int a, int b) const { return lat_.leq(a, b); }
    int join(int a, int b) const { return lat_.join(a, b); }
    int meet(int a, int b) const { return lat_.meet(a, b); }
    const std::string& label(int a) const { return lat_.name(a); }
    ElemSet all() const { return lat_.all(); }

    int comm(int a, int b) const { return comm_[a * size() + b]; }
    const std::vector<int>& comm_table() const { return comm_; }

    ElemSet primes() const { return primes_; }
    ElemSet maximals() const { return maximals_; }
    ElemSet minimal_primes() const { return minimal_; }
    int radical(int t) const { return rad_[t]; }
    int annihilator(int a) const { return ann_[a]; }

    MiStructure renamed(std::string n) const {
        MiStructure s = *this;
        s.name_ = std::move(n);
        return s;
    }

private:
    friend MiStructure validate_mi(FiniteLattice, std::vector<int>, std::string);

    FiniteLattice lat_;
    std::vector<int> comm_;
    std::string name_;
    ElemSet primes_ = 0, maximals_ = 0, minimal_ = 0;
    std::vector<int> rad_, ann_;
};

// ---- axiom checks ----

inline std::vector<Violation> mi_violations(const FiniteLattice& L, const std::vector<int>& comm) {
    const int n = L.size();
    auto c = [&](int a, int b) { return comm[a * n + b]; };
    std::vector<Violation> out;
    auto record = [&](ViolationKind k, std::vector<int> w, std::string msg) {
        for (auto& v : out)
            if (v.kind == k) {
                ++v.count;
                return;
            }
        Violation v{k, w, {}, 1, std::move(msg)};
        for (int x : w) v.labels.push_back(L.name(x));
        out.push_back(std::move(v));
    };

    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z)
            if (L.leq(x, z))
                for (int y = 0; y < n; ++y)
                    if (L.join(x, L.meet(y, z)) != L.meet(L.join(x, y), z))
                        record(ViolationKind::NotModular, {x, y, z}, "x <= z but x v (y ^ z) != (x v y) ^ z");
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (c(a, b) != c(b, a)) record(ViolationKind::NotCommutative, {a, b}, "[a,b] != [b,a]");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!L.leq(c(a, b), L.meet(a, b))) record(ViolationKind::ExceedsMeet, {a, b}, "[a,b] is not below a ^ b");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int d = 0; d < n; ++d)
                if (c(a, L.join(b, d)) != L.join(c(a, b), c(a, d)))
                    record(ViolationKind::NotJoinDistributive, {a, b, d}, "[a, b v c] != [a,b] v [a,c]");
    // top is a unit; [top,top] = top is the case a = top
    for (int a = 0; a < n; ++a)
        if (c(a, L.top()) != a) record(ViolationKind::NotSemidegenerate, {a}, "[a,top] != a");
    return out;
}

inline std::string describe(const std::vector<Violation>& vs) {
    std::string s;
    for (const auto& v : vs) {
        if (!s.empty()) s += "; ";
        s += to_string(v.kind);
        s += " (";
        for (std::size_t i = 0; i < v.labels.size(); ++i) s += (i ? "," : "") + v.labels[i];
        s += ")";
        if (v.count > 1) s += " x" + std::to_string(v.count);
    }
    return s;
}

inline MiStructure validate_mi(FiniteLattice lat, std::vector<int> comm, std::string name) {
    const int n = lat.size();
    if (static_cast<int>(comm.size()) != n * n)
        throw Error(ErrorKind::SchemaError, "commutator table has " + std::to_string(comm.size()) + " cells, expected " +
                                                std::to_string(n * n));
    for (int v : comm)
        if (v < 0 || v >= n) throw Error(ErrorKind::SchemaError, "commutator entry out of range");
    if (auto vs = mi_violations(lat, comm); !vs.empty()) throw Error(std::move(vs), describe(mi_violations(lat, comm)));

    MiStructure S;
    S.lat_ = std::move(lat);
    S.comm_ = std::move(comm);
    S.name_ = std::move(name);
    const FiniteLattice& L = S.lat_;

    for (int p = 0; p < n; ++p) {
        if (p == L.top()) continue;
        bool prime = true;
        for (int a = 0; a < n && prime; ++a)
            for (int b = 0; b < n && prime; ++b)
                if (L.leq(S.comm(a, b), p) && !L.leq(a, p) && !L.leq(b, p)) prime = false;
        if (prime) S.primes_ |= bit(p);
    }
    for (int m = 0; m < n; ++m)
        if (m != L.top() && L.up(m) == (bit(m) | bit(L.top()))) S.maximals_ |= bit(m);
    if (!subset(S.maximals_, S.primes_))
        throw Error(ErrorKind::MaxNotPrime, "a maximal element failed the prime test", members(S.maximals_ & ~S.primes_));
    for_each_bit(S.primes_, [&](int p) {
        if ((L.down(p) & S.primes_) == bit(p)) S.minimal_ |= bit(p);
    });

    S.rad_.resize(n);
    for (int t = 0; t < n; ++t) S.rad_[t] = L.meet_all(L.up(t) & S.primes_);
    S.ann_.resize(n);
    for (int a = 0; a < n; ++a) {
        int r = L.bot();
        for (int x = 0; x < n; ++x)
            if (S.comm(a, x) == L.bot()) r = L.join(r, x);
        S.ann_[a] = r;
    }
    return S;
}

// ---- residuation and iterates ----

// a -> b = join of all c with [a,c] <= b
inline int residuum(const MiStructure& S, int a, int b) {
    int r = S.bot();
    for (int c = 0; c < S.size(); ++c)
        if (S.leq(S.comm(a, c), b)) r = S.join(r, c);
    return r;
}

inline int annihilator(const MiStructure& S, int a) { return S.annihilator(a); }

inline int comm_iterate(const MiStructure& S, int a, int n) {
    for (int i = 0; i < n; ++i) {
        int next = S.comm(a, a);
        if (next == a) break;
        a = next;
    }
    return a;
}

struct Stabilized {
    int value;
    int index; // least n with [a,a]^n = [a,a]^(n+1)
};

inline Stabilized comm_stabilize(const MiStructure& S, int a) {
    int k = 0;
    for (;;) {
        int next = S.comm(a, a);
        if (next == a) return {a, k};
        a = next;
        ++k;
    }
}

// ---- spectrum and radical ----

struct SpectrumSets {
    ElemSet primes = 0;
    ElemSet maximals = 0;
    ElemSet minimal_primes = 0;
};

inline SpectrumSets spectrum(const MiStructure& S) { return {S.primes(), S.maximals(), S.minimal_primes()}; }

inline bool is_prime(const MiStructure& S, int p) { return has(S.primes(), p); }

inline int radical(const MiStructure& S, int t) { return S.radical(t); }

inline int radical_via_iterates(const MiStructure& S, int t) {
    int r = S.bot();
    for (int a = 0; a < S.size(); ++a)
        if (S.leq(comm_stabilize(S, a).value, t)) r = S.join(r, a);
    return r;
}

inline int rho0(const MiStructure& S) { return S.radical(S.bot()); }

inline bool is_semiprime(const MiStructure& S) { return rho0(S) == S.bot(); }

inline bool is_associative(const MiStructure& S) {
    for (int a = 0; a < S.size(); ++a)
        for (int b = 0; b < S.size(); ++b)
            for (int c = 0; c < S.size(); ++c)
                if (S.comm(S.comm(a, b), c) != S.comm(a, S.comm(b, c))) return false;
    return true;
}

// (a, b, n) such that no m gives [[a,a]^m,[b,b]^m] <= [a,b]^n.
inline std::optional<std::array<int, 3>> star_violation(const MiStructure& S) {
    if (is_associative(S)) return std::nullopt;
    for (int a = 0; a < S.size(); ++a)
        for (int b = 0; b < S.size(); ++b) {
            const int ab = S.comm(a, b);
            const int n_cap = comm_stabilize(S, ab).index;
            const int m_cap = std::max(comm_stabilize(S, a).index, comm_stabilize(S, b).index);
            for (int n = 0; n <= n_cap; ++n) {
                const int rhs = comm_iterate(S, ab, n);
                bool found = false;
                for (int m = 0; m <= m_cap && !found; ++m)
                    found = S.leq(S.comm(comm_iterate(S, a, m), comm_iterate(S, b, m)), rhs);
                if (!found) return std::array<int, 3>{a, b, n};
            }
        }
    return std::nullopt;
}

inline bool satisfies_star(const MiStructure& S) { return !star_violation(S); }

// ---- Boolean center ----

struct Center {
    ElemSet members = 0;
    std::vector<int> complement; // annihilator, for members; -1 otherwise
    bool boolean_sublattice = true;
};

inline Center boolean_center_mi(const MiStructure& S) {
    Center c;
    c.complement.assign(S.size(), -1);
    for (int a = 0; a < S.size(); ++a)
        if (S.join(a, S.annihilator(a)) == S.top()) {
            c.members |= bit(a);
            c.complement[a] = S.annihilator(a);
        }
    for_each_bit(c.members, [&](int a) {
        if (S.meet(a, c.complement[a]) != S.bot() || !has(c.members, c.complement[a])) c.boolean_sublattice = false;
        for_each_bit(c.members, [&](int b) {
            if (!has(c.members, S.join(a, b)) || !has(c.members, S.meet(a, b))) c.boolean_sublattice = false;
        });
    });
    return c;
}

inline ElemSet center_set(const MiStructure& S) { return boolean_center_mi(S).members; }

// ---- quotient and product ----

struct Quotient {
    MiStructure structure;
    int t = 0;
    std::vector<int> orig; // quotient index -> source element
    std::vector<int> proj; // source element -> quotient index of a v t
};

inline Quotient quotient(const MiStructure& S, int t) {
    Quotient q;
    q.t = t;
    std::vector<int> to_new(S.size(), -1);
    for (int a = 0; a < S.size(); ++a)
        if (S.leq(t, a)) {
            to_new[a] = static_cast<int>(q.orig.size());
            q.orig.push_back(a);
        }
    const int m = static_cast<int>(q.orig.size());
    std::vector<std::string> names;
    for (int a : q.orig) names.push_back(S.label(a));
    std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) leq[i][j] = S.leq(q.orig[i], q.orig[j]);
    FiniteLattice L = FiniteLattice::from_order(std::move(names), leq);
    std::vector<int> comm(m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) comm[i * m + j] = to_new[S.join(S.comm(q.orig[i], q.orig[j]), t)];
    try {
        q.structure = validate_mi(std::move(L), std::move(comm), S.name() + "/" + S.label(t));
    } catch (const Error& e) {
        throw Error(ErrorKind::QuotientInvalid, e.what());
    }
    q.proj.resize(S.size());
    for (int a = 0; a < S.size(); ++a) q.proj[a] = to_new[S.join(a, t)];
    return q;
}

inline MiStructure product(const MiStructure& A, const MiStructure& B) {
    const int na = A.size(), nb = B.size();
    const int n = na * nb;
    if (n > kMaxElements) throw Error(ErrorKind::TooLarge, "product has " + std::to_string(n) + " elements (limit 64)");
    std::vector<std::string> names(n);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) names[i * nb + j] = "(" + A.label(i) + "," + B.label(j) + ")";
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) leq[x][y] = A.leq(x / nb, y / nb) && B.leq(x % nb, y % nb);
    std::vector<int> comm(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) comm[x * n + y] = A.comm(x / nb, y / nb) * nb + B.comm(x % nb, y % nb);
    return validate_mi(FiniteLattice::from_order(std::move(names), leq), std::move(comm),
                       "(" + A.name() + ")x(" + B.name() + ")");
}

// Commutator-preserving order isomorphism A -> B, if any.
inline std::optional<std::vector<int>> find_isomorphism(const MiStructure& A, const MiStructure& B) {
    return find_lattice_isomorphism(A.lat(), B.lat(), [&](const std::vector<int>& f) {
        for (int a = 0; a < A.size(); ++a)
            for (int b = 0; b < A.size(); ++b)
                if (f[A.comm(a, b)] != B.comm(f[a], f[b])) return false;
        return true;
    });
}

// ---- morphisms ----

struct StructureMorphism {
    MiStructure src, dst;
    std::vector<int> fwd; // join-preserving src -> dst
    std::vector<int> adj; // right adjoint dst -> src
};

inline StructureMorphism make_morphism(const MiStructure& src, const MiStructure& dst, std::vector<int> fwd) {
    if (static_cast<int>(fwd.size()) != src.size())
        throw Error(ErrorKind::SchemaError, "morphism map has wrong length");
    if (fwd[src.bot()] != dst.bot()) throw Error(ErrorKind::NotJoinPreserving, "bottom not preserved", {src.bot()});
    for (int a = 0; a < src.size(); ++a)
        for (int b = 0; b < src.size(); ++b)
            if (fwd[src.join(a, b)] != dst.join(fwd[a], fwd[b]))
                throw Error(ErrorKind::NotJoinPreserving, "join of '" + src.label(a) + "' and '" + src.label(b) + "'",
                            {a, b});
    StructureMorphism m{src, dst, std::move(fwd), {}};
    m.adj.resize(dst.size());
    for (int b = 0; b < dst.size(); ++b) {
        int r = src.bot();
        for (int a = 0; a < src.size(); ++a)
            if (dst.leq(m.fwd[a], b)) r = src.join(r, a);
        m.adj[b] = r;
    }
    for (int a = 0; a < src.size(); ++a)
        for (int b = 0; b < dst.size(); ++b)
            if (dst.leq(m.fwd[a], b) != src.leq(a, m.adj[b]))
                throw Error(ErrorKind::InternalInvariantFailure, "adjunction law fails", {a, b});
    return m;
}

inline StructureMorphism identity_morphism(const MiStructure& S) {
    std::vector<int> f(S.size());
    for (int a = 0; a < S.size(); ++a) f[a] = a;
    return make_morphism(S, S, std::move(f));
}

// a |-> a v t into the quotient by t
inline StructureMorphism canonical_projection(const MiStructure& S, int t) {
    Quotient q = quotient(S, t);
    return make_morphism(S, q.structure, q.proj);
}

inline bool is_admissible(const StructureMorphism& m) {
    bool ok = true;
    for_each_bit(m.dst.primes(), [&](int q) {
        if (!is_prime(m.src, m.adj[q])) ok = false;
    });
    return ok;
}

inline bool is_flat(const StructureMorphism& m) {
    for (int a = 0; a < m.src.size(); ++a)
        for (int t = 0; t < m.src.size(); ++t)
            if (!m.dst.leq(residuum(m.dst, m.fwd[a], m.fwd[t]), m.fwd[residuum(m.src, a, t)])) return false;
    return true;
}

inline bool preserves_commutator(const StructureMorphism& m) {
    for (int a = 0; a < m.src.size(); ++a)
        for (int b = 0; b < m.src.size(); ++b)
            if (m.fwd[m.src.comm(a, b)] != m.dst.comm(m.fwd[a], m.fwd[b])) return false;
    return true;
}

inline bool is_pp_morphism(const StructureMorphism& m) {
    for (int a = 0; a < m.src.size(); ++a)
        for (int b = 0; b < m.src.size(); ++b)
            if (m.src.annihilator(a) == m.src.annihilator(b) &&
                m.dst.annihilator(m.fwd[a]) != m.dst.annihilator(m.fwd[b]))
                return false;
    return true;
}

} // namespace mispec
