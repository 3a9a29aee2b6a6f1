#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "caq/errors.hpp"
#include "caq/library.hpp"
#include "caq/metrics.hpp"

namespace caq {

enum class RequirementCategory { Hardware, Software };

inline std::string_view to_string(RequirementCategory category) {
  switch (category) {
    case RequirementCategory::Hardware:
      return "hardware";
    case RequirementCategory::Software:
      return "software";
  }
  throw ValidationError("unknown requirement category");
}

inline RequirementCategory category_from_string(std::string_view text) {
  if (text == "hardware") return RequirementCategory::Hardware;
  if (text == "software") return RequirementCategory::Software;
  throw ValidationError("unknown requirement category '" + std::string(text) +
                        "' (expected hardware|software)");
}

// One infrastructure requirement row. An entry that is available but not
// needed is surplus; it still counts toward what the organization has on
// hand.
struct RequirementEntry {
  std::string name;
  RequirementCategory category = RequirementCategory::Hardware;
  bool needed = false;
  bool available = false;

  friend bool operator==(const RequirementEntry&,
                         const RequirementEntry&) = default;
};

// Skill inventory for one person. Skill names are normalized (trimmed,
// lowercased) and deduplicated; vectors are kept sorted so equality is
// set equality.
struct PersonEntry {
  std::string person_id;
  std::vector<std::string> skills_required;
  std::vector<std::string> skills_possessed;

  friend bool operator==(const PersonEntry&, const PersonEntry&) = default;
};

struct ReadinessManifest {
  std::string project_id;
  std::vector<RequirementEntry> requirements;
  std::vector<PersonEntry> persons;

  friend bool operator==(const ReadinessManifest&,
                         const ReadinessManifest&) = default;
};

namespace detail {

inline std::string normalize_skill(std::string_view raw,
                                   const std::string& where) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) {
    ++begin;
  }
  while (end > begin &&
         std::isspace(static_cast<unsigned char>(raw[end - 1]))) {
    --end;
  }
  if (begin == end) {
    throw ValidationError(where + ": skill names must be non-empty");
  }
  std::string skill(raw.substr(begin, end - begin));
  std::transform(skill.begin(), skill.end(), skill.begin(), [](char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  });
  return skill;
}

inline std::vector<std::string> normalize_skill_set(const nlohmann::json& raw,
                                                    std::string_view field,
                                                    const std::string& where) {
  if (!raw.is_array()) {
    throw ValidationError(where + ": field '" + std::string(field) +
                          "' must be an array of strings");
  }
  std::set<std::string> skills;
  for (const auto& entry : raw) {
    if (!entry.is_string()) {
      throw ValidationError(where + ": field '" + std::string(field) +
                            "' must be an array of strings");
    }
    skills.insert(normalize_skill(entry.get<std::string>(), where));
  }
  return {skills.begin(), skills.end()};
}

}  // namespace detail

inline ReadinessManifest manifest_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("manifest: expected a JSON object");
  }
  detail::reject_unknown_fields(doc, {"project_id", "requirements", "persons"},
                                "manifest");

  ReadinessManifest manifest;
  manifest.project_id = detail::require_string(doc, "project_id", "manifest");

  const auto& requirements =
      detail::require_field(doc, "requirements", "manifest");
  if (!requirements.is_array()) {
    throw ValidationError("manifest: 'requirements' must be an array");
  }
  std::set<std::pair<RequirementCategory, std::string>> seen_requirements;
  std::size_t index = 0;
  for (const auto& entry : requirements) {
    const std::string where = "requirements[" + std::to_string(index++) + "]";
    if (!entry.is_object()) {
      throw ValidationError(where + ": expected an object");
    }
    detail::reject_unknown_fields(
        entry, {"name", "category", "needed", "available"}, where);
    RequirementEntry requirement;
    requirement.name = detail::require_string(entry, "name", where);
    if (requirement.name.empty()) {
      throw ValidationError(where + ": requirement name must be non-empty");
    }
    requirement.category = category_from_string(
        detail::require_string(entry, "category", where));
    const auto require_bool = [&entry, &where](std::string_view field) {
      const auto& value = detail::require_field(entry, field, where);
      if (!value.is_boolean()) {
        throw ValidationError(where + ": field '" + std::string(field) +
                              "' must be a boolean");
      }
      return value.get<bool>();
    };
    requirement.needed = require_bool("needed");
    requirement.available = require_bool("available");
    if (!seen_requirements
             .emplace(requirement.category, requirement.name)
             .second) {
      throw ValidationError(where + ": duplicate requirement '" +
                            requirement.name + "' in category '" +
                            std::string(to_string(requirement.category)) +
                            "'");
    }
    manifest.requirements.push_back(std::move(requirement));
  }

  const auto& persons = detail::require_field(doc, "persons", "manifest");
  if (!persons.is_array()) {
    throw ValidationError("manifest: 'persons' must be an array");
  }
  std::set<std::string> seen_persons;
  index = 0;
  for (const auto& entry : persons) {
    const std::string where = "persons[" + std::to_string(index++) + "]";
    if (!entry.is_object()) {
      throw ValidationError(where + ": expected an object");
    }
    detail::reject_unknown_fields(
        entry, {"person_id", "skills_required", "skills_possessed"}, where);
    PersonEntry person;
    person.person_id = detail::require_string(entry, "person_id", where);
    if (person.person_id.empty()) {
      throw ValidationError(where + ": person_id must be non-empty");
    }
    if (!seen_persons.insert(person.person_id).second) {
      throw ValidationError(where + ": duplicate person_id '" +
                            person.person_id + "'");
    }
    person.skills_required = detail::normalize_skill_set(
        detail::require_field(entry, "skills_required", where),
        "skills_required", where);
    person.skills_possessed = detail::normalize_skill_set(
        detail::require_field(entry, "skills_possessed", where),
        "skills_possessed", where);
    manifest.persons.push_back(std::move(person));
  }

  return manifest;
}

inline ReadinessManifest parse_manifest(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError(std::string("manifest: ") + err.what());
  }
  return manifest_from_json(doc);
}

inline nlohmann::json manifest_to_json(const ReadinessManifest& manifest) {
  nlohmann::json requirements = nlohmann::json::array();
  for (const auto& requirement : manifest.requirements) {
    requirements.push_back({
        {"available", requirement.available},
        {"category", to_string(requirement.category)},
        {"name", requirement.name},
        {"needed", requirement.needed},
    });
  }
  nlohmann::json persons = nlohmann::json::array();
  for (const auto& person : manifest.persons) {
    persons.push_back({
        {"person_id", person.person_id},
        {"skills_possessed", person.skills_possessed},
        {"skills_required", person.skills_required},
    });
  }
  return {
      {"persons", std::move(persons)},
      {"project_id", manifest.project_id},
      {"requirements", std::move(requirements)},
  };
}

inline std::string serialize_manifest(const ReadinessManifest& manifest) {
  return manifest_to_json(manifest).dump(2) + "\n";
}

// mq_ratio_cap = true counts only possessed skills that are also required
// (per-person ratio <= 1). Set false to count every possessed skill;
// per-person ratios, hence MQ, may then exceed 1.
struct EvaluateOptions {
  bool mq_ratio_cap = true;
};

struct DerivedCounts {
  std::size_t hs_available = 0;
  std::size_t hs_needed = 0;
  std::vector<PersonSkills> persons;
};

// Reduces a manifest to the raw inputs of the quotient formulas.
// hs_needed counts entries marked needed; hs_available counts entries on
// hand, surplus included.
inline DerivedCounts derive_counts(const ReadinessManifest& manifest,
                                   const EvaluateOptions& options = {}) {
  DerivedCounts counts;
  for (const auto& requirement : manifest.requirements) {
    if (requirement.needed) ++counts.hs_needed;
    if (requirement.available) ++counts.hs_available;
  }
  counts.persons.reserve(manifest.persons.size());
  for (const auto& person : manifest.persons) {
    std::size_t available = 0;
    if (options.mq_ratio_cap) {
      // skills vectors are sorted; count the intersection
      available = static_cast<std::size_t>(std::count_if(
          person.skills_possessed.begin(), person.skills_possessed.end(),
          [&person](const std::string& skill) {
            return std::binary_search(person.skills_required.begin(),
                                      person.skills_required.end(), skill);
          }));
    } else {
      available = person.skills_possessed.size();
    }
    counts.persons.push_back(PersonSkills{
        person.person_id, static_cast<std::uint32_t>(available),
        static_cast<std::uint32_t>(person.skills_required.size())});
  }
  return counts;
}

// Full readiness evaluation of one organization/project manifest.
struct AqResult {
  Quotient rq;
  Quotient mq;
  Quotient aq;
  double aq_percent = 0.0;
  ReadinessClass classification = ReadinessClass::NotReady;
  std::map<std::string, double> per_person_ratios;
};

inline AqResult evaluate_readiness(const ReadinessManifest& manifest,
                                   const EvaluateOptions& options = {}) {
  if (manifest.persons.empty()) {
    throw ValidationError("manifest '" + manifest.project_id +
                          "' has no persons; manpower quotient is undefined");
  }
  const DerivedCounts counts = derive_counts(manifest, options);
  const Quotient rq = compute_rq(counts.hs_available, counts.hs_needed);
  const Quotient mq = compute_mq(counts.persons);
  const Quotient aq = compute_aq(rq, mq);
  AqResult result{rq, mq, aq, to_percent(aq), interpret_aq(aq), {}};
  for (const auto& person : counts.persons) {
    result.per_person_ratios.emplace(person.person_id, skill_ratio(person));
  }
  return result;
}

}  // namespace caq
