#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

namespace oamncc::conflict {

// The seven knowledge types strategies and information items get tagged
// with: constraints & frames, expressive preferences, action affordances,
// dynamic situation model, information quality, mitigation utility,
// conflict structure.
enum class KnowledgeTag { CF, EP, AA, SM, IQ, MU, CS };

const char* to_string(KnowledgeTag tag);

enum class Provenance {
    command_directive,
    official_regulation,
    sensor,
    social_media,
    unknown,
};

const char* to_string(Provenance p);
Provenance provenance_from_string(const std::string& name);

/// Source-class to quality-score map. Quality is derived deterministically
/// from provenance; the defaults favor command directives over social media.
struct QualityMap {
    double command_directive = 0.9;
    double official_regulation = 0.85;
    double sensor = 0.7;
    double social_media = 0.2;
    double unknown = 0.1;

    double quality_of(Provenance p) const;
};

/// A capability update: merchant classes now carrying water cannons.
struct CapabilityUpdate {
    std::vector<std::string> cannon_classes;
};

struct InformationItem {
    std::variant<std::monostate, CapabilityUpdate> content;
    Provenance provenance = Provenance::unknown;
    int timestamp_min = 0;
    double quality = 0.0;
};

InformationItem make_item(CapabilityUpdate update, Provenance provenance, int timestamp_min,
                          const QualityMap& qualities);

/**
 * Quality gate for the situation model: keeps items with
 * quality >= min_quality, order preserved. Only items that pass are
 * eligible to update beliefs. Idempotent and monotone in the threshold.
 */
std::vector<InformationItem> filter_information(const std::vector<InformationItem>& items,
                                                double min_quality);

} // namespace oamncc::conflict
