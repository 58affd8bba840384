#include "assort/trisection.hpp"

#include <algorithm>
#include <cmath>

namespace assort {

std::int64_t fixed_epoch_length(double eps, std::int64_t horizon,
                                TrisectionOptions::EpochLength form) {
    const double t = static_cast<double>(horizon);
    const double log_term =
        form == TrisectionOptions::EpochLength::log_t_squared ? std::log(t * t) : std::log(t);
    const auto n = 16 * static_cast<std::int64_t>(std::ceil(log_term / (eps * eps)));
    return std::max<std::int64_t>(n, 1);
}

std::int64_t adaptive_epoch_length(double eps, std::int64_t horizon) {
    const double log_term = std::log(8.0 * static_cast<double>(horizon) * eps * eps);
    const auto n = 8 * static_cast<std::int64_t>(std::ceil(log_term / (eps * eps)));
    return std::max<std::int64_t>(n, 1);
}

TrisectionPolicy::TrisectionPolicy(Vector<double> revenues, std::int64_t horizon,
                                   TrisectionOptions options)
    : Policy(std::move(revenues), horizon), options_(options) {
    const double t = static_cast<double>(horizon);
    if (options_.variant == TrisectionOptions::Variant::fixed_level)
        scheme_ = CiScheme::fixed(1.0 / (t * t), options_.ci_scale);
    else
        scheme_ = CiScheme::adaptive(1.0 / t, options_.ci_scale);
    scheme_.validate();
    start_epoch(0.0, 1.0);
}

std::string TrisectionPolicy::name() const {
    return options_.variant == TrisectionOptions::Variant::fixed_level ? "trisection"
                                                                       : "adaptive-trisection";
}

std::int64_t TrisectionPolicy::epoch_length(double eps) const {
    if (options_.variant == TrisectionOptions::Variant::fixed_level)
        return fixed_epoch_length(eps, horizon(), options_.epoch_length);
    return adaptive_epoch_length(eps, horizon());
}

void TrisectionPolicy::start_epoch(double a, double b) {
    const int epoch = history_.empty() ? 0 : state_.epoch + 1;
    state_ = TrisectionState{};
    state_.epoch = epoch;
    state_.a = a;
    state_.b = b;
    state_.x = (2.0 * a + b) / 3.0;
    state_.y = (a + 2.0 * b) / 3.0;
    state_.n_inner = epoch_length(state_.y - state_.x);
    state_.ci = ConfidenceInterval{};
    state_.phase = TrisectionState::Phase::explore_y;
    state_.exploit_only = options_.exploit_when_budget_short && state_.n_inner > remaining();

    level_a_ = level_set(revenues(), state_.a);
    level_y_ = level_set(revenues(), state_.y);

    EpochRecord rec;
    rec.epoch = epoch;
    rec.a = a;
    rec.b = b;
    rec.x = state_.x;
    rec.y = state_.y;
    rec.n_inner = state_.n_inner;
    history_.push_back(rec);
}

void TrisectionPolicy::sync_record() {
    EpochRecord& rec = history_.back();
    rec.inner_completed = state_.inner_t;
    rec.explorations = state_.explore_count;
    rec.ci = state_.ci;
}

void TrisectionPolicy::finish_epoch() {
    history_.back().finished = true;
    if (state_.ci.upper < state_.y)
        start_epoch(state_.a, state_.y);
    else
        start_epoch(state_.x, state_.b);
}

Assortment TrisectionPolicy::propose() {
    if (!state_.exploit_only && state_.phase == TrisectionState::Phase::explore_y &&
        state_.ci.contains(state_.y)) {
        last_was_explore_ = true;
        return level_y_;
    }
    state_.phase = TrisectionState::Phase::exploit_a;
    last_was_explore_ = false;
    return level_a_;
}

void TrisectionPolicy::update(const Assortment&, const PurchaseOutcome& outcome) {
    if (state_.exploit_only) return;
    if (last_was_explore_) {
        state_.explore_sum += outcome.revenue;
        state_.explore_count += 1;
        state_.ci = scheme_.interval(state_.explore_sum, state_.explore_count);
        state_.phase = TrisectionState::Phase::exploit_a;
        sync_record();
        return;
    }
    state_.inner_t += 1;
    state_.phase = TrisectionState::Phase::explore_y;
    sync_record();
    if (state_.inner_t >= state_.n_inner) finish_epoch();
}

} // namespace assort
