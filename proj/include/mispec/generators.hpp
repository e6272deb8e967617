#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "mi.hpp"

namespace mispec {

// Ideals of Z_n: divisor d stands for dZ_n. Join is gcd, meet is lcm, product is gcd(d*e, n).
inline MiStructure zn_structure(int n) {
    if (n < 1) throw Error(ErrorKind::SchemaError, "zn needs n >= 1");
    std::vector<int> divs;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) divs.push_back(d);
    if (static_cast<int>(divs.size()) > kMaxElements)
        throw Error(ErrorKind::TooLarge, "zn:" + std::to_string(n) + " has too many divisors");
    const int m = static_cast<int>(divs.size());
    std::vector<std::string> names;
    for (int d : divs) names.push_back(std::to_string(d));
    std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) leq[i][j] = divs[i] % divs[j] == 0;
    FiniteLattice L = FiniteLattice::from_order(std::move(names), leq);
    auto idx = [&](int d) {
        for (int i = 0; i < m; ++i)
            if (divs[i] == d) return i;
        throw Error(ErrorKind::InternalInvariantFailure, "divisor " + std::to_string(d) + " missing");
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (L.join(i, j) != idx(std::gcd(divs[i], divs[j])) || L.meet(i, j) != idx(std::lcm(divs[i], divs[j])))
                throw Error(ErrorKind::InternalInvariantFailure, "divisor lattice tables disagree with gcd/lcm");
    std::vector<int> comm(m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            comm[i * m + j] = idx(std::gcd(static_cast<long long>(divs[i]) * divs[j], static_cast<long long>(n)));
    return validate_mi(std::move(L), std::move(comm), "zn:" + std::to_string(n));
}

// Distributive lattice with the meet as commutator.
inline MiStructure frame_from_lattice(const FiniteLattice& L, std::string name) {
    if (auto w = distributivity_violation(L))
        throw Error(ErrorKind::NotDistributive,
                    "'" + L.name((*w)[0]) + "','" + L.name((*w)[1]) + "','" + L.name((*w)[2]) + "' break distributivity",
                    {(*w)[0], (*w)[1], (*w)[2]});
    const int n = L.size();
    std::vector<int> comm(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) comm[a * n + b] = L.meet(a, b);
    return validate_mi(L, std::move(comm), std::move(name));
}

// Chain 0 < 1 < ... < k-1.
inline MiStructure chain_frame(int k) {
    if (k < 1) throw Error(ErrorKind::SchemaError, "chain needs length >= 1");
    std::vector<std::string> names;
    std::vector<std::vector<bool>> leq(k, std::vector<bool>(k));
    for (int i = 0; i < k; ++i) {
        names.push_back(std::to_string(i));
        for (int j = 0; j < k; ++j) leq[i][j] = i <= j;
    }
    return frame_from_lattice(FiniteLattice::from_order(std::move(names), leq), "chain:" + std::to_string(k));
}

// Subsets of a k-element set, labelled by their members a, b, c, ...; "0" is the empty set.
inline MiStructure boolean_frame(int k) {
    if (k < 0 || k > 6) throw Error(ErrorKind::TooLarge, "boolean frame needs 0 <= k <= 6");
    const int n = 1 << k;
    std::vector<std::string> names;
    for (int s = 0; s < n; ++s) {
        std::string lab;
        for (int i = 0; i < k; ++i)
            if (s & (1 << i)) lab += static_cast<char>('a' + i);
        names.push_back(lab.empty() ? "0" : lab);
    }
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) leq[s][t] = (s & t) == s;
    return frame_from_lattice(FiniteLattice::from_order(std::move(names), leq), "boolean:" + std::to_string(k));
}

inline MiStructure distributive_frame(std::vector<std::string> names,
                                      const std::vector<std::pair<std::string, std::string>>& pairs,
                                      std::string name = "frame") {
    return frame_from_lattice(build_lattice(std::move(names), pairs), std::move(name));
}

} // namespace mispec
