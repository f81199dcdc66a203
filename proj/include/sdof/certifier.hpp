#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "sdof/cover.hpp"
#include "sdof/gsvd.hpp"
#include "sdof/region.hpp"

namespace sdof {

/// One dof-accounting ledger entry: a weighted rate combination bounded by
/// the sum of the per-term prelog caps.
struct BoundStep {
    std::string label;
    std::array<long, 2> weights{0, 0};  // coefficients on (d1, d2)
    std::vector<std::pair<std::string, long>> terms;  // (description, dof cap)

    long cap_total() const {
        long t = 0;
        for (const auto& [desc, cap] : terms) t += cap;
        return t;
    }
};

/// Machine-checkable record of the converse: achievable region, outer bound,
/// the accounting steps behind the outer bound, and the equality verdict.
struct Certificate {
    long r0 = 0, r1 = 0, r2 = 0, n_e = 0;
    RegionCase case_tag = RegionCase::A;
    DofRegion achievable;
    DofRegion outer;
    std::vector<BoundStep> steps;
    bool swap_applied = false;
    bool verdict = false;
};

struct OuterBound {
    DofRegion region;
    std::vector<BoundStep> steps;
    bool swap_applied = false;
    RegionCase case_tag = RegionCase::A;
};

namespace detail {

inline Halfspace hs(long a, long b, long c) {
    return geo::normalize(Rat(a), Rat(b), Rat(c));
}

inline std::string set_name(const std::vector<long>& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

}  // namespace detail

/// Case-specific outer bound on the s.d.o.f. region, assembled from the
/// single-user caps and the weighted-sum line of the matching converse case.
/// Internally works with ranks ordered so the shared-link analysis applies
/// (r1 <= r2, i.e. |C| >= |A|) and reflects the output back.
inline OuterBound outer_bound(long r0, long r1, long r2, long n_e) {
    validate_dims(r0, r1, r2, n_e);

    OuterBound out;
    out.swap_applied = r1 > r2;
    const long lo_rank = out.swap_applied ? r2 : r1;
    const long hi_rank = out.swap_applied ? r1 : r2;

    // Link-set sizes with |C| >= |A|.
    const long a = r0 - hi_rank;
    const long b = lo_rank + hi_rank - r0;
    const long c = r0 - lo_rank;

    out.case_tag = classify_case(r0, lo_rank, hi_rank, n_e);

    // In swapped coordinates: x is the user with the smaller rank.
    std::vector<Halfspace> hs;
    hs.push_back(detail::hs(-1, 0, 0));
    hs.push_back(detail::hs(0, -1, 0));
    hs.push_back(detail::hs(1, 0, clamp0(lo_rank - n_e)));  // single-user caps
    hs.push_back(detail::hs(0, 1, clamp0(hi_rank - n_e)));
    std::vector<BoundStep> steps;
    {
        BoundStep su;
        su.label = "single-user caps (one transmitter silenced)";
        su.weights = {1, 1};
        su.terms.push_back({"d1 <= [r1 - N_E]^+", clamp0(lo_rank - n_e)});
        su.terms.push_back({"d2 <= [r2 - N_E]^+", clamp0(hi_rank - n_e)});
        steps.push_back(std::move(su));
    }

    switch (out.case_tag) {
        case RegionCase::A: {
            // E1 inside A, E2 inside C; sum bound with three receiver groups.
            hs.push_back(detail::hs(1, 0, a + b - n_e));
            hs.push_back(detail::hs(0, 1, b + c - n_e));
            hs.push_back(detail::hs(1, 1, a + b + c - 2 * n_e));
            BoundStep st;
            st.label = "sum bound, eavesdroppers E1 in A and E2 in C (|E1|=|E2|=" +
                       std::to_string(n_e) + ")";
            st.weights = {1, 1};
            st.terms.push_back({"I(X_{1,A\\E1}; Y_{A\\E1})", a - n_e});
            st.terms.push_back({"I(X_{2,C\\E2}; Y_{C\\E2})", c - n_e});
            st.terms.push_back({"I(M, X_{1,B}; Y_B)", b});
            steps.push_back(std::move(st));
            break;
        }
        case RegionCase::C: {
            // A inside E1, C inside E2; recursive cover over F = B\E1, G = B\E2.
            const long f = a + b - n_e;  // = lo_rank - n_e, >= 1 here
            const long g = b + c - n_e;  // = hi_rank - n_e
            hs.push_back(detail::hs(g, f, f * g));
            const RecursiveCover cov = build_cover(f, g);
            BoundStep st;
            st.label = "recursive cover bound, A in E1, C in E2, |F|=" + std::to_string(f) +
                       ", |G|=" + std::to_string(g);
            st.weights = {g, f};
            for (long j = 0; j < g; ++j)
                st.terms.push_back(
                    {"I(M, X_{1,B}; Y_F" + std::to_string(j + 1) + "), F" +
                         std::to_string(j + 1) + "=" + detail::set_name(cov.f_sets[j]),
                     f});
            steps.push_back(std::move(st));
            break;
        }
        case RegionCase::B: {
            // A inside E1 inside A+B, E2 inside C; cover runs over G = B.
            const long f = clamp0(a + b - n_e);
            hs.push_back(detail::hs(1, 0, f));
            hs.push_back(detail::hs(0, 1, b + c - n_e));
            if (f >= 1 && b >= 1) {
                hs.push_back(detail::hs(b, f, (b + c - n_e) * f));
                const RecursiveCover cov = build_cover(f, b);
                BoundStep st;
                st.label = "recursive cover bound with G = B, A in E1 in A+B, E2 in C, |F|=" +
                           std::to_string(f);
                st.weights = {b, f};
                for (long j = 0; j < b; ++j)
                    st.terms.push_back(
                        {"I(M, X_{1,B}; Y_F" + std::to_string(j + 1) + "), F" +
                             std::to_string(j + 1) + "=" + detail::set_name(cov.f_sets[j]),
                         f});
                for (long j = 0; j < f; ++j)
                    st.terms.push_back({"I(X_{2,C\\E2}; Y_{C\\E2}) copy " + std::to_string(j + 1),
                                        c - n_e});
                steps.push_back(std::move(st));
            }
            break;
        }
        case RegionCase::Degenerate:
            // One user's dof is identically zero; the single-user caps close it.
            break;
    }

    if (out.swap_applied) {
        for (auto& h : hs) std::swap(h.a, h.b);
        for (auto& st : steps) std::swap(st.weights[0], st.weights[1]);
    }
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    out.region = DofRegion::from_halfspaces(hs);
    out.steps = std::move(steps);
    return out;
}

/// Achievable region, outer bound and equality verdict for one rank profile.
inline Certificate certify(long r0, long r1, long r2, long n_e) {
    Certificate cert;
    cert.r0 = r0;
    cert.r1 = r1;
    cert.r2 = r2;
    cert.n_e = n_e;
    cert.achievable = sdof_region(r0, r1, r2, n_e);
    OuterBound ob = outer_bound(r0, r1, r2, n_e);
    cert.case_tag = ob.case_tag;
    cert.outer = std::move(ob.region);
    cert.steps = std::move(ob.steps);
    cert.swap_applied = ob.swap_applied;
    cert.verdict = cert.achievable == cert.outer;
    return cert;
}

/// End-to-end path: factor the channel pair, read off the rank profile,
/// certify the region.
inline Certificate certify_from_channels(const ComplexMatrix& h1, const ComplexMatrix& h2,
                                         long n_e, double tol = 1e-10) {
    const GsvdResult g = gsvd(h1, h2, tol);
    return certify(g.dims.r0, g.dims.r1, g.dims.r2, n_e);
}

inline json step_to_json(const BoundStep& s) {
    json j;
    j["label"] = s.label;
    j["weights"] = json::array({s.weights[0], s.weights[1]});
    json terms = json::array();
    for (const auto& [desc, cap] : s.terms) {
        json t;
        t["desc"] = desc;
        t["cap"] = cap;
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline json certificate_to_json(const Certificate& c) {
    json j;
    json cfg;
    cfg["r0"] = c.r0;
    cfg["r1"] = c.r1;
    cfg["r2"] = c.r2;
    cfg["n_e"] = c.n_e;
    j["config"] = std::move(cfg);
    j["case"] = to_string(c.case_tag);
    j["achievable"] = region_to_json(c.achievable);
    j["outer"] = region_to_json(c.outer);
    j["verdict"] = c.verdict;
    json steps = json::array();
    for (const auto& s : c.steps) steps.push_back(step_to_json(s));
    j["steps"] = std::move(steps);
    j["swap_applied"] = c.swap_applied;
    return j;
}

}  // namespace sdof
