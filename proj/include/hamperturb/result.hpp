#pragma once

#include <optional>
#include <string>
#include <vector>

#include "permutation.hpp"

namespace hamperturb {

/// Witness of Hamiltonicity: the n vertices in cyclic visiting order.
struct Certificate {
    std::vector<int> order;
};

/// Negative result of a pipeline stage.
struct Failure {
    std::string stage;
    std::string detail;
    int exposure_count = 0;
};

/// Ascending in-interval elements u_1..u_ell together with their interval
/// successors; harvested so that x~succ[0], u[i]~succ[i+1] and y~u[ell-1]
/// are all edges.
struct SpecialSequence {
    std::vector<int> elems;
    std::vector<int> succs;
    int x = -1;
    int y = -1;
    int ell() const { return static_cast<int>(elems.size()); }
};

/// Knobs shared by the construction pipelines; every field has the
/// documented default when absent from a params JSON document.
struct ConstructParams {
    std::optional<int> L_override;      // long-cycle threshold
    std::optional<int> run_len;         // exposure run length
    int retries = 3;                    // windows tried per long cycle
    std::optional<int> exposure_cap;    // budget for exposed slots
    bool fallback = false;              // rotation-extension rescue (fixed mode)
    long long fallback_budget = 200000;
    int re_runs = 3;                    // fixed-mode schedule retries
    std::optional<int> a_size;          // bipartite part size for witness checks
    double alpha = 0.25;                // cycle-factor density parameter
    std::optional<int> ell;             // cycle-factor cycle length
};

/// Bookkeeping from one min-degree pipeline invocation.
struct MinDegReport {
    int n = 0;
    int cycle_count = 0;
    int long_treated = 0;
    int short_count = 0;                // cycles absorbed pair-by-pair
    int exposure_count = 0;             // slots exposed before final resolution
    int exposure_cap = 0;
    bool cap_ok = true;
    std::vector<int> raw_good_counts;   // ordered good pairs per step, pre-filter
    std::vector<int> table_sizes;       // isolated candidate pairs per step
    int supplemented = 0;               // extra raw pairs added to empty steps
    int twin_count = 0;
    int twin_steps = 0;
    std::vector<std::uint8_t> first_order_outcomes; // per greedy step: first exposure success
    int order_exposures = 0;
    int runs_used = 1;
    bool fallback_used = false;
    std::optional<bool> witness;
    bool lazy = false;
};

struct MinDegOutcome {
    std::optional<Certificate> certificate;
    std::optional<Failure> failure;
    MinDegReport report;
    TwoFactor factor;
    bool ok() const { return certificate.has_value(); }
};

/// Bookkeeping from one interval-absorption pipeline invocation.
struct RegularReport {
    int n = 0;
    int cycle_count = 0;
    int path_len = 0;
    int interval_len = 0;
    std::vector<SpecialSequence> sequences;  // one per absorption step
    std::vector<int> ells;
};

struct RegularOutcome {
    std::optional<Certificate> certificate;
    std::optional<Failure> failure;
    RegularReport report;
    bool ok() const { return certificate.has_value(); }
};

/// Bookkeeping from one cycle-factor concatenation invocation.
struct ClFactorReport {
    int n = 0;
    int ell = 0;
    int cycles_total = 0;
    int concatenated = 0;     // cycles merged into the initial path
    int absorbed = 0;         // cycles absorbed afterwards
    int pairs_consumed = 0;
    bool guard_violated = false; // ell below the configured minimum for alpha
};

struct ClFactorOutcome {
    std::optional<Certificate> certificate;
    std::optional<Failure> failure;
    ClFactorReport report;
    bool ok() const { return certificate.has_value(); }
};

struct PosaOutcome {
    std::optional<Certificate> certificate;
    std::optional<Failure> failure;
    long long steps = 0;
    bool ok() const { return certificate.has_value(); }
};

} // namespace hamperturb
