#pragma once

// Reference policies the trisection search is compared against:
// epoch-based UCB and Thompson sampling over estimated utilities, golden-ratio
// search over the revenue threshold, and a fixed assortment.

#include <cstdint>
#include <limits>
#include <vector>

#include "assort/policy.hpp"
#include "assort/random.hpp"

namespace assort {

/// Offers one assortment until a no-purchase closes the epoch. The number of
/// purchases of item i within an epoch is an unbiased estimate of v_i.
class EpochEstimator {
public:
    explicit EpochEstimator(ItemId n);

    bool epoch_open() const { return open_; }
    const Assortment& current() const { return current_; }
    void open(Assortment assortment);

    /// Returns true when the outcome closed the epoch.
    bool record(const PurchaseOutcome& outcome);

    std::int64_t epochs_closed() const { return closed_; }
    std::int64_t epochs_containing(ItemId i) const { return epochs_with_[static_cast<std::size_t>(i - 1)]; }
    std::int64_t purchases(ItemId i) const { return purchases_[static_cast<std::size_t>(i - 1)]; }

    /// Mean purchases per epoch of item i; 0 if never offered.
    double mean_estimate(ItemId i) const;

private:
    bool open_ = false;
    Assortment current_;
    std::int64_t closed_ = 0;
    std::vector<std::int64_t> epochs_with_;
    std::vector<std::int64_t> purchases_;
    std::vector<std::int64_t> in_epoch_;
};

struct UcbOptions {
    double c1 = 6.928203230275509; // sqrt(48)
    double c2 = 48.0;
};

class UcbPolicy final : public Policy {
public:
    UcbPolicy(Vector<double> revenues, std::int64_t horizon, UcbOptions options = {});

    std::string name() const override { return "ucb"; }

    /// v_bar_i + c1 sqrt(v_bar_i ln(sqrt(N) l + 1) / T_i) + c2 ln(sqrt(N) l + 1) / T_i,
    /// with l the index of the epoch about to start; +inf for untried items.
    double optimistic_utility(ItemId i) const;

    const EpochEstimator& estimator() const { return est_; }

protected:
    Assortment propose() override;
    void update(const Assortment& offered, const PurchaseOutcome& outcome) override;

private:
    UcbOptions options_;
    EpochEstimator est_;
};

class ThompsonPolicy final : public Policy {
public:
    ThompsonPolicy(Vector<double> revenues, std::int64_t horizon, std::uint64_t seed);

    std::string name() const override { return "thompson"; }

    /// Draws v~_i = 1/B - 1 with B ~ Beta(n_i, V_i + 1); 1 for untried items.
    double sample_utility(ItemId i);

    const EpochEstimator& estimator() const { return est_; }

protected:
    Assortment propose() override;
    void update(const Assortment& offered, const PurchaseOutcome& outcome) override;

private:
    double draw_beta(double alpha, double beta);

    Rng rng_;
    EpochEstimator est_;
};

/// Golden-section search on F over theta in [0, 1] with ceil(sqrt(T))
/// offers per probe; then exploits the better of the last two probes.
class GoldenRatioSearchPolicy final : public Policy {
public:
    struct Probe {
        double theta = 0.0;
        double sum = 0.0;
        std::int64_t count = 0;
        double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
    };

    GoldenRatioSearchPolicy(Vector<double> revenues, std::int64_t horizon);

    std::string name() const override { return "grs"; }

    std::int64_t probe_length() const { return probe_len_; }
    bool searching() const { return searching_; }
    double bracket_low() const { return lo_; }
    double bracket_high() const { return hi_; }
    const std::vector<double>& probed_thetas() const { return probed_; }
    double incumbent() const { return incumbent_; }

protected:
    Assortment propose() override;
    void update(const Assortment& offered, const PurchaseOutcome& outcome) override;

private:
    Probe* active_probe();
    void advance();
    void stop_search();

    std::int64_t probe_len_;
    double min_width_;
    double lo_ = 0.0;
    double hi_ = 1.0;
    Probe left_;
    Probe right_;
    bool searching_ = true;
    double incumbent_ = 0.0;
    Assortment exploit_;
    std::vector<double> probed_;
    double cached_theta_ = -1.0;
    Assortment cached_set_;
};

class StaticPolicy final : public Policy {
public:
    StaticPolicy(Vector<double> revenues, std::int64_t horizon, Assortment assortment);

    std::string name() const override { return "static"; }

protected:
    Assortment propose() override { return assortment_; }
    void update(const Assortment&, const PurchaseOutcome&) override {}

private:
    Assortment assortment_;
};

} // namespace assort
