// Machine-readable run reports. One RunReport summarizes one (instance,
// algorithm) execution; csv_row emits the fixed column set below.
//
// CSV columns, in order:
//   instance      file stem the run was loaded from
//   digest        16-hex-digit content digest of the instance
//   algorithm     solver name (greedy, greedy-derand, balanced, clustered,
//                 even, general, ...)
//   parameters    ';'-separated key=value list (k, seed, strict, ...)
//   objective     CF_G for channel runs, round count for migration runs
//   lower_bound   best applicable lower bound, exact rational text (p or p/q)
//   gap           objective - lower_bound, fixed 4-decimal text, always >= 0
//   flips         alternating-path flips performed
//   rounds        repair rounds (channel) or schedule rounds (migration)
//   witnesses     palette-growth witnesses certified (migration general)
//   fallbacks     constructive-lemma fallbacks taken (migration general)
//   oracle        exact optimum when the oracle ran, else empty
//   ratio         objective / oracle, fixed 4 decimals, else empty
//   elapsed_s     wall-clock seconds, fixed 6 decimals (strip this column
//                 before byte-comparing two runs)
#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "chromaflux/bounds.hpp"
#include "chromaflux/errors.hpp"
#include "chromaflux/instance.hpp"

namespace chromaflux {

struct RunReport {
    std::string instance;
    std::string digest;
    std::string algorithm;
    std::string parameters;
    long long objective = 0;
    Rational lower_bound{0, 1};
    long long flips = 0;
    long long rounds = 0;
    long long witnesses = 0;
    long long fallbacks = 0;
    bool has_oracle = false;
    long long oracle_value = 0;
    double elapsed_seconds = 0.0;
};

// CF_G >= sum_v d_v^2 / C_v by Cauchy-Schwarz at each vertex (at most C_v
// classes). Coincides with the homogeneous bound when all C_v = k.
inline Rational conflict_lower_bound(const Instance& inst) {
    Rational acc{0, 1};
    for (int v = 0; v < inst.num_nodes(); ++v) {
        long long d = inst.degree(v);
        Rational term{d * d, inst.capacity(v)};
        // a/b + c/d = (ad + cb) / bd, re-reduced
        acc = Rational{acc.num * term.den + term.num * acc.den, acc.den * term.den};
    }
    return acc;
}

namespace detail {

inline std::string format_fixed(double x, int places) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, x);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

// Asserts the invariant gap >= 0 exactly (objective * den >= num) and stores
// the bound. Every lower bound we emit is sound, so a violation is a solver
// or validator defect.
inline void set_lower_bound(RunReport& r, const Rational& lb) {
    internal_check(lb.den > 0, "lower bound with nonpositive denominator");
    internal_check(r.objective * lb.den >= lb.num, "objective fell below its lower bound");
    r.lower_bound = lb;
}

inline std::string csv_header() {
    return "instance,digest,algorithm,parameters,objective,lower_bound,gap,flips,rounds,"
           "witnesses,fallbacks,oracle,ratio,elapsed_s";
}

inline std::string csv_row(const RunReport& r) {
    std::string lb_text = std::to_string(r.lower_bound.num);
    if (r.lower_bound.den != 1) lb_text += "/" + std::to_string(r.lower_bound.den);
    double gap = static_cast<double>(r.objective) - r.lower_bound.value();
    std::string row = detail::csv_escape(r.instance) + "," + r.digest + "," + r.algorithm + "," +
                      detail::csv_escape(r.parameters) + "," + std::to_string(r.objective) + "," +
                      lb_text + "," + detail::format_fixed(gap, 4) + "," + std::to_string(r.flips) +
                      "," + std::to_string(r.rounds) + "," + std::to_string(r.witnesses) + "," +
                      std::to_string(r.fallbacks) + ",";
    if (r.has_oracle) {
        row += std::to_string(r.oracle_value);
        row += ",";
        double ratio = r.oracle_value == 0 ? 1.0
                                           : static_cast<double>(r.objective) /
                                                 static_cast<double>(r.oracle_value);
        row += detail::format_fixed(ratio, 4);
    } else {
        row += ",";
    }
    row += "," + detail::format_fixed(r.elapsed_seconds, 6);
    return row;
}

}  // namespace chromaflux
