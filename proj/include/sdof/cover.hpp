#pragma once

#include <set>
#include <vector>

#include "sdof/errors.hpp"

namespace sdof {

/// Recursive eavesdropper cover: the sets F_1..F_g tile f concatenated
/// copies of G = {1..g}, with V_i the unconsumed tail of the current copy
/// and c_i the index of the copy F_i ends in.
struct RecursiveCover {
    long f_size = 0;
    long g_size = 0;
    std::vector<std::vector<long>> f_sets;  // g entries, each of size f
    std::vector<std::vector<long>> h_sets;  // g entries; empty unless Case II fired
    std::vector<std::vector<long>> v_sets;  // g + 1 entries, v_sets[0] = {1..g}
    std::vector<long> counters;             // g + 1 entries, counters[0] = 1
};

/// Builds the cover for 1 <= f <= g. Case I consumes the f smallest
/// remaining elements of V; Case II wraps around into the next copy of G.
inline RecursiveCover build_cover(long f_size, long g_size) {
    if (f_size < 1 || g_size < f_size)
        throw InvalidSizes("build_cover: need 1 <= f <= g");

    RecursiveCover cov;
    cov.f_size = f_size;
    cov.g_size = g_size;

    std::vector<long> v;
    for (long k = 1; k <= g_size; ++k) v.push_back(k);
    cov.v_sets.push_back(v);
    cov.counters.push_back(1);

    for (long i = 1; i <= g_size; ++i) {
        std::vector<long> f, h;
        long c = cov.counters.back();
        if (static_cast<long>(v.size()) >= f_size) {
            f.assign(v.begin(), v.begin() + f_size);
            v.erase(v.begin(), v.begin() + f_size);
        } else {
            const long short_by = f_size - static_cast<long>(v.size());
            for (long k = 1; k <= short_by; ++k) h.push_back(k);
            f = v;
            f.insert(f.end(), h.begin(), h.end());
            v.clear();
            for (long k = short_by + 1; k <= g_size; ++k) v.push_back(k);
            ++c;
        }
        cov.f_sets.push_back(std::move(f));
        cov.h_sets.push_back(std::move(h));
        cov.v_sets.push_back(v);
        cov.counters.push_back(c);
    }
    return cov;
}

/// Combinatorial invariant audit: counter endpoints, set sizes, the
/// exactly-f-fold coverage of every element, and the counter recurrence.
inline bool cover_invariants_hold(const RecursiveCover& c) {
    const long f = c.f_size, g = c.g_size;
    if (f < 1 || f > g) return false;
    if (static_cast<long>(c.f_sets.size()) != g) return false;
    if (static_cast<long>(c.v_sets.size()) != g + 1) return false;
    if (static_cast<long>(c.counters.size()) != g + 1) return false;
    if (c.counters.front() != 1 || c.counters.back() != f) return false;
    if (!c.v_sets.back().empty()) return false;
    if (static_cast<long>(c.v_sets.front().size()) != g) return false;

    std::vector<long> multiplicity(static_cast<size_t>(g) + 1, 0);
    for (long i = 0; i < g; ++i) {
        const auto& fi = c.f_sets[i];
        if (static_cast<long>(fi.size()) != f) return false;
        std::set<long> uniq(fi.begin(), fi.end());
        if (static_cast<long>(uniq.size()) != f) return false;
        for (long e : fi) {
            if (e < 1 || e > g) return false;
            ++multiplicity[e];
        }
        const long dc = c.counters[i + 1] - c.counters[i];
        if (dc != 0 && dc != 1) return false;
        if ((dc == 1) != !c.h_sets[i].empty()) return false;
    }
    for (long e = 1; e <= g; ++e)
        if (multiplicity[e] != f) return false;
    return true;
}

}  // namespace sdof
