#pragma once

// Trisection search for the revenue threshold theta* on the potential F.
//
// Each epoch keeps an interval [a, b] believed to contain theta*, probes the
// right trisection point y = (a + 2b)/3 until a confidence interval for F(y)
// separates from y, and offers the level set of the left endpoint a once per
// inner iteration. If the interval ends below y the right end moves to y,
// otherwise the left end moves to x = (2a + b)/3.

#include <cstdint>
#include <vector>

#include "assort/concentration.hpp"
#include "assort/policy.hpp"

namespace assort {

struct TrisectionOptions {
    enum class Variant { fixed_level, adaptive_level };
    // Epoch length of the fixed-level variant: 16 ceil(eps^-2 ln(T^2)) by
    // default, or 16 ceil(eps^-2 ln T) for the shorter form.
    enum class EpochLength { log_t_squared, log_t };

    Variant variant = Variant::adaptive_level;
    double ci_scale = 2.0;
    EpochLength epoch_length = EpochLength::log_t_squared;
    // Switch to pure exploitation of L_a once an epoch's n_inner exceeds
    // the periods left in the horizon.
    bool exploit_when_budget_short = false;

    static TrisectionOptions fixed_level() { return {Variant::fixed_level, 0.5}; }
    static TrisectionOptions adaptive_level(double scale = 2.0) {
        return {Variant::adaptive_level, scale};
    }
};

/// 16 ceil(eps^-2 ln(T^2)) (or ln T with EpochLength::log_t).
std::int64_t fixed_epoch_length(double eps, std::int64_t horizon,
                                TrisectionOptions::EpochLength form =
                                    TrisectionOptions::EpochLength::log_t_squared);

/// 8 ceil(eps^-2 ln(8 T eps^2)), at least 1.
std::int64_t adaptive_epoch_length(double eps, std::int64_t horizon);

struct TrisectionState {
    enum class Phase { explore_y, exploit_a };

    double a = 0.0;
    double b = 1.0;
    double x = 1.0 / 3.0;
    double y = 2.0 / 3.0;
    std::int64_t inner_t = 0; ///< completed inner iterations in this epoch
    std::int64_t n_inner = 0;
    double explore_sum = 0.0;
    std::int64_t explore_count = 0;
    ConfidenceInterval ci; ///< starts as [0, 1]
    Phase phase = Phase::explore_y;
    int epoch = 0;
    bool exploit_only = false;
};

struct EpochRecord {
    int epoch = 0;
    double a = 0.0;
    double b = 1.0;
    double x = 0.0;
    double y = 0.0;
    std::int64_t n_inner = 0;
    std::int64_t inner_completed = 0;
    std::int64_t explorations = 0;
    ConfidenceInterval ci;
    bool finished = false;
};

class TrisectionPolicy final : public Policy {
public:
    TrisectionPolicy(Vector<double> revenues, std::int64_t horizon, TrisectionOptions options);

    std::string name() const override;

    const TrisectionState& state() const { return state_; }
    const TrisectionOptions& options() const { return options_; }

    /// One record per epoch started so far; the last may still be running.
    const std::vector<EpochRecord>& epochs() const { return history_; }

protected:
    Assortment propose() override;
    void update(const Assortment& offered, const PurchaseOutcome& outcome) override;

private:
    void start_epoch(double a, double b);
    void finish_epoch();
    std::int64_t epoch_length(double eps) const;
    void sync_record();

    TrisectionOptions options_;
    CiScheme scheme_;
    TrisectionState state_;
    Assortment level_a_;
    Assortment level_y_;
    bool last_was_explore_ = false;
    std::vector<EpochRecord> history_;
};

} // namespace assort
