#include "assort/baselines.hpp"

#include <cmath>
#include <random>

#include "assort/potential.hpp"

namespace assort {

// --- EpochEstimator ---------------------------------------------------------

EpochEstimator::EpochEstimator(ItemId n)
    : epochs_with_(static_cast<std::size_t>(n), 0),
      purchases_(static_cast<std::size_t>(n), 0),
      in_epoch_(static_cast<std::size_t>(n), 0) {}

void EpochEstimator::open(Assortment assortment) {
    if (open_) throw ProtocolError("epoch already open");
    current_ = std::move(assortment);
    open_ = true;
}

bool EpochEstimator::record(const PurchaseOutcome& outcome) {
    if (!open_) throw ProtocolError("no open epoch");
    if (outcome.item != 0) {
        in_epoch_[static_cast<std::size_t>(outcome.item - 1)] += 1;
        return false;
    }
    for (ItemId i : current_) {
        const auto k = static_cast<std::size_t>(i - 1);
        epochs_with_[k] += 1;
        purchases_[k] += in_epoch_[k];
        in_epoch_[k] = 0;
    }
    closed_ += 1;
    open_ = false;
    return true;
}

double EpochEstimator::mean_estimate(ItemId i) const {
    const auto n = epochs_containing(i);
    return n ? static_cast<double>(purchases(i)) / static_cast<double>(n) : 0.0;
}

// --- UCB --------------------------------------------------------------------

UcbPolicy::UcbPolicy(Vector<double> revenues, std::int64_t horizon, UcbOptions options)
    : Policy(std::move(revenues), horizon), options_(options), est_(item_count()) {
    if (!(options_.c1 >= 0.0 && options_.c2 >= 0.0))
        throw ConfigError("ucb: c1 and c2 must be non-negative");
}

double UcbPolicy::optimistic_utility(ItemId i) const {
    const auto ti = est_.epochs_containing(i);
    if (ti == 0) return std::numeric_limits<double>::infinity();
    const double v_bar = est_.mean_estimate(i);
    const double epoch = static_cast<double>(est_.epochs_closed() + 1);
    const double log_term = std::log(std::sqrt(static_cast<double>(item_count())) * epoch + 1.0);
    const double t = static_cast<double>(ti);
    return v_bar + options_.c1 * std::sqrt(v_bar * log_term / t) + options_.c2 * log_term / t;
}

Assortment UcbPolicy::propose() {
    if (!est_.epoch_open()) {
        // Untried items have an infinite index and are always included; the
        // rest is the best level set of the optimistic instance.
        const ItemId n = item_count();
        Vector<double> utilities(n);
        std::vector<ItemId> untried;
        for (ItemId i = 1; i <= n; ++i) {
            const double u = optimistic_utility(i);
            if (std::isinf(u)) {
                untried.push_back(i);
                utilities[i - 1] = 0.0;
            } else {
                utilities[i - 1] = u;
            }
        }
        auto chosen = oracle_optimal(Instance(revenues(), utilities)).first.items();
        chosen.insert(chosen.end(), untried.begin(), untried.end());
        est_.open(Assortment::from_unsorted(std::move(chosen)));
    }
    return est_.current();
}

void UcbPolicy::update(const Assortment&, const PurchaseOutcome& outcome) { est_.record(outcome); }

// --- Thompson sampling ------------------------------------------------------

ThompsonPolicy::ThompsonPolicy(Vector<double> revenues, std::int64_t horizon, std::uint64_t seed)
    : Policy(std::move(revenues), horizon), rng_(seed), est_(item_count()) {}

double ThompsonPolicy::draw_beta(double alpha, double beta) {
    std::gamma_distribution<double> ga(alpha, 1.0);
    std::gamma_distribution<double> gb(beta, 1.0);
    const double x = ga(rng_);
    const double y = gb(rng_);
    return x / (x + y);
}

double ThompsonPolicy::sample_utility(ItemId i) {
    const auto n = est_.epochs_containing(i);
    if (n == 0) return 1.0;
    const double b = draw_beta(static_cast<double>(n), static_cast<double>(est_.purchases(i)) + 1.0);
    constexpr double kMaxUtility = 1e12;
    if (!(b > 0.0)) return kMaxUtility;
    return std::min(1.0 / b - 1.0, kMaxUtility);
}

Assortment ThompsonPolicy::propose() {
    if (!est_.epoch_open()) {
        const ItemId n = item_count();
        Vector<double> utilities(n);
        for (ItemId i = 1; i <= n; ++i) utilities[i - 1] = sample_utility(i);
        est_.open(oracle_optimal(Instance(revenues(), utilities)).first);
    }
    return est_.current();
}

void ThompsonPolicy::update(const Assortment&, const PurchaseOutcome& outcome) { est_.record(outcome); }

// --- Golden-ratio search ----------------------------------------------------

namespace {
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
}

GoldenRatioSearchPolicy::GoldenRatioSearchPolicy(Vector<double> revenues, std::int64_t horizon)
    : Policy(std::move(revenues), horizon),
      probe_len_(static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(horizon))))),
      min_width_(1.0 / std::sqrt(static_cast<double>(horizon))) {
    left_.theta = hi_ - kInvPhi * (hi_ - lo_);
    right_.theta = lo_ + kInvPhi * (hi_ - lo_);
}

GoldenRatioSearchPolicy::Probe* GoldenRatioSearchPolicy::active_probe() {
    if (left_.count < probe_len_) return &left_;
    if (right_.count < probe_len_) return &right_;
    return nullptr;
}

void GoldenRatioSearchPolicy::stop_search() {
    searching_ = false;
    const bool left_done = left_.count == probe_len_;
    const bool right_done = right_.count == probe_len_;
    if (left_done && right_done)
        incumbent_ = left_.mean() >= right_.mean() ? left_.theta : right_.theta;
    else if (left_done)
        incumbent_ = left_.theta;
    else if (right_done)
        incumbent_ = right_.theta;
    else
        incumbent_ = left_.count >= right_.count ? left_.theta : right_.theta;
    exploit_ = level_set(revenues(), incumbent_);
}

void GoldenRatioSearchPolicy::advance() {
    if (left_.mean() >= right_.mean()) {
        hi_ = right_.theta;
        right_ = left_;
        left_ = Probe{hi_ - kInvPhi * (hi_ - lo_)};
    } else {
        lo_ = left_.theta;
        left_ = right_;
        right_ = Probe{lo_ + kInvPhi * (hi_ - lo_)};
    }
    if (hi_ - lo_ < min_width_) stop_search();
}

Assortment GoldenRatioSearchPolicy::propose() {
    if (searching_) {
        Probe* probe = active_probe();
        if (probe->count == 0 && remaining() < probe_len_) {
            stop_search();
        } else {
            if (probe->theta != cached_theta_) {
                cached_theta_ = probe->theta;
                cached_set_ = level_set(revenues(), probe->theta);
                if (probe->count == 0) probed_.push_back(probe->theta);
            }
            return cached_set_;
        }
    }
    return exploit_;
}

void GoldenRatioSearchPolicy::update(const Assortment&, const PurchaseOutcome& outcome) {
    if (!searching_) return;
    Probe* probe = active_probe();
    probe->sum += outcome.revenue;
    probe->count += 1;
    if (active_probe() == nullptr) advance();
}

// --- Static -----------------------------------------------------------------

StaticPolicy::StaticPolicy(Vector<double> revenues, std::int64_t horizon, Assortment assortment)
    : Policy(std::move(revenues), horizon), assortment_(std::move(assortment)) {
    assortment_.check_range(item_count());
}

} // namespace assort
