#include "oamncc/knowledge.hpp"

#include "oamncc/errors.hpp"

namespace oamncc::conflict {

const char* to_string(KnowledgeTag tag)
{
    switch (tag) {
    case KnowledgeTag::CF: return "CF";
    case KnowledgeTag::EP: return "EP";
    case KnowledgeTag::AA: return "AA";
    case KnowledgeTag::SM: return "SM";
    case KnowledgeTag::IQ: return "IQ";
    case KnowledgeTag::MU: return "MU";
    case KnowledgeTag::CS: return "CS";
    }
    return "?";
}

const char* to_string(Provenance p)
{
    switch (p) {
    case Provenance::command_directive: return "command_directive";
    case Provenance::official_regulation: return "official_regulation";
    case Provenance::sensor: return "sensor";
    case Provenance::social_media: return "social_media";
    case Provenance::unknown: return "unknown";
    }
    return "?";
}

Provenance provenance_from_string(const std::string& name)
{
    if (name == "command_directive") return Provenance::command_directive;
    if (name == "official_regulation") return Provenance::official_regulation;
    if (name == "sensor") return Provenance::sensor;
    if (name == "social_media") return Provenance::social_media;
    if (name == "unknown") return Provenance::unknown;
    throw ConfigError("unknown provenance: " + name);
}

double QualityMap::quality_of(Provenance p) const
{
    switch (p) {
    case Provenance::command_directive: return command_directive;
    case Provenance::official_regulation: return official_regulation;
    case Provenance::sensor: return sensor;
    case Provenance::social_media: return social_media;
    case Provenance::unknown: return unknown;
    }
    return unknown;
}

InformationItem make_item(CapabilityUpdate update, Provenance provenance, int timestamp_min,
                          const QualityMap& qualities)
{
    InformationItem item;
    item.content = std::move(update);
    item.provenance = provenance;
    item.timestamp_min = timestamp_min;
    item.quality = qualities.quality_of(provenance);
    return item;
}

std::vector<InformationItem> filter_information(const std::vector<InformationItem>& items,
                                                double min_quality)
{
    std::vector<InformationItem> kept;
    kept.reserve(items.size());
    for (const auto& item : items) {
        if (item.quality >= min_quality) {
            kept.push_back(item);
        }
    }
    return kept;
}

} // namespace oamncc::conflict
