#pragma once

#include "oamncc/geometry.hpp"
#include "oamncc/knowledge.hpp"
#include "oamncc/sim.hpp"

#include <set>
#include <vector>

namespace oamncc::strategy {

struct MerchantBelief {
    int id = 0;
    sim::Position position;
    double ransom = 0.0;
    bool water_cannon = false; // belief, may lag ground truth
    bool under_attack = false;
    bool interdicted = false;
    bool boarded = false;
    bool expired = false;

    bool resolved() const { return interdicted || boarded || expired; }
};

struct FuelModel {
    sim::FuelRates rates;
    double burn_sd = 0.05; // believed per-minute burn variability
};

struct OverboardPrior {
    double alert_nm = 20.0;
    double behind_min_nm = 5.0;  // sailor lies this far behind the alert, uniform
    double behind_max_nm = 15.0;
    double rescue_p0 = 0.2;
    double rescue_dp = 0.1;
};

struct DroneBelief {
    bool available = false;
    bool launched = false;
    bool beacon_delivered = false;
    double speed_kn = 80.0;
    double range_nm = 40.0;
};

struct FlotsamBelief {
    bool present = false;
    sim::Position position; // exact when beaconed, last sighting otherwise
    bool beaconed = false;
    bool resolved = false; // a reacquisition attempt already happened
};

/// Records which knowledge classes a policy touched while deciding; the
/// tests audit this against each policy's declared tag set.
struct AccessLog {
    std::set<conflict::KnowledgeTag> touched;
};

struct BeliefData {
    int clock_min = 0;
    sim::Position own_position;
    double fuel_estimate = 0.0;
    sim::ShipMode own_mode = sim::ShipMode::loiter;
    bool fuel_exhausted = false;
    double max_speed_kn = 30.0;
    sim::Position port;
    FuelModel fuel_model;

    std::vector<MerchantBelief> merchants;
    int attack_window_min = 30;
    double p_board_undefended = 0.0;
    double p_board_defended = 0.0;

    bool sailor_spotted = false;
    bool sailor_rescued = false;
    int rescue_attempts = 0;
    sim::Position sailor_position; // meaningful only once spotted
    OverboardPrior overboard;

    DroneBelief drone;
    FlotsamBelief flotsam;
};

/**
 * The agent's copy of the world: everything a Policy is allowed to read.
 * Cannon flags may disagree with ground truth when a capability memo was
 * rejected; the fuel estimate carries the configured gauge error.
 *
 * Getters that expose contextual knowledge mark the attached AccessLog:
 * memo-updated capability beliefs mark SM, grounding statuses mark EP,
 * drone affordance fields mark AA. Baseline navigation facts are untagged.
 */
class BeliefState {
public:
    explicit BeliefState(BeliefData data) : d_(std::move(data)) {}

    void attach_log(AccessLog* log) const { log_ = log; }

    int clock_min() const { return d_.clock_min; }
    const sim::Position& own_position() const { return d_.own_position; }
    double fuel_estimate() const { return d_.fuel_estimate; }
    sim::ShipMode own_mode() const { return d_.own_mode; }
    bool fuel_exhausted() const { return d_.fuel_exhausted; }
    double max_speed_kn() const { return d_.max_speed_kn; }
    const sim::Position& port() const { return d_.port; }
    const FuelModel& fuel_model() const { return d_.fuel_model; }
    const OverboardPrior& overboard_prior() const { return d_.overboard; }
    int attack_window_min() const { return d_.attack_window_min; }

    std::size_t merchant_count() const { return d_.merchants.size(); }
    const MerchantBelief& merchant(std::size_t i) const { return d_.merchants[i]; }
    const std::vector<MerchantBelief>& merchants() const { return d_.merchants; }

    /// Believed cannon fit of a merchant; part of the dynamically updated
    /// situation model.
    bool cannon_believed(std::size_t i) const
    {
        note(conflict::KnowledgeTag::SM);
        return d_.merchants[i].water_cannon;
    }

    /// Believed per-minute boarding probability against merchant i.
    double boarding_p_believed(std::size_t i) const
    {
        note(conflict::KnowledgeTag::SM);
        return d_.merchants[i].water_cannon ? d_.p_board_defended : d_.p_board_undefended;
    }

    bool sailor_spotted() const
    {
        note(conflict::KnowledgeTag::EP);
        return d_.sailor_spotted;
    }
    bool sailor_rescued() const
    {
        note(conflict::KnowledgeTag::EP);
        return d_.sailor_rescued;
    }
    int rescue_attempts() const
    {
        note(conflict::KnowledgeTag::EP);
        return d_.rescue_attempts;
    }
    const sim::Position& sailor_position() const { return d_.sailor_position; }

    const DroneBelief& drone() const
    {
        note(conflict::KnowledgeTag::AA);
        return d_.drone;
    }
    const FlotsamBelief& flotsam() const { return d_.flotsam; }

    const BeliefData& data() const { return d_; }

private:
    void note(conflict::KnowledgeTag tag) const
    {
        if (log_ != nullptr) {
            log_->touched.insert(tag);
        }
    }

    BeliefData d_;
    mutable AccessLog* log_ = nullptr;
};

} // namespace oamncc::strategy
