#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <json.hpp>

#include "assort/mnl.hpp"

namespace assort {

/// Policy name plus free-form parameters, as written in run configs.
///
/// Recognized names: "trisection", "adaptive-trisection", "ucb", "thompson",
/// "grs", "static".
struct PolicySpec {
    std::string name;
    nlohmann::json params = nlohmann::json::object();

    friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

/// Online assortment policy over a horizon of T periods.
///
/// A policy is built from the item revenues only; utilities never cross this
/// boundary. next_assortment() and observe() must strictly alternate, and at
/// most T assortments are handed out.
class Policy {
public:
    Policy(Vector<double> revenues, std::int64_t horizon);
    virtual ~Policy() = default;

    Policy(const Policy&) = delete;
    Policy& operator=(const Policy&) = delete;

    /// Throws HorizonExhausted after T periods, ProtocolError if the previous
    /// offer has not been observed yet.
    Assortment next_assortment();

    /// Throws ProtocolError if no offer is pending or the outcome is not in
    /// the offered assortment.
    void observe(const PurchaseOutcome& outcome);

    virtual std::string name() const = 0;

    std::int64_t horizon() const { return horizon_; }
    std::int64_t periods_used() const { return used_; }
    std::int64_t remaining() const { return horizon_ - used_; }
    ItemId item_count() const { return static_cast<ItemId>(revenues_.size()); }
    const Vector<double>& revenues() const { return revenues_; }

protected:
    virtual Assortment propose() = 0;
    virtual void update(const Assortment& offered, const PurchaseOutcome& outcome) = 0;

private:
    Vector<double> revenues_;
    std::int64_t horizon_;
    std::int64_t used_ = 0;
    bool pending_ = false;
    Assortment last_;
};

/// Builds a policy by name. `seed` feeds policy-internal randomness (Thompson
/// sampling); deterministic policies ignore it. A "static" spec must already
/// carry a concrete "assortment" array or one of "empty" / "full".
std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const Vector<double>& revenues,
                                    std::int64_t horizon, std::uint64_t seed);

bool is_known_policy(const std::string& name);

} // namespace assort
