#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "caq/errors.hpp"
#include "caq/metrics.hpp"

namespace caq {

// How the library organizes its components for lookup.
enum class OrganizationType { Hierarchical, SearchBased, DropdownList };

// Where the library lives relative to the programmer's workstation.
// The local CLI/IDE split is carried as metadata only; it has no measurable
// analogue under automated lookups.
enum class EnvironmentType { LocalCli, LocalIde, Network, Internet };

inline bool is_remote(EnvironmentType env) {
  return env == EnvironmentType::Network || env == EnvironmentType::Internet;
}

inline std::string_view to_string(OrganizationType org) {
  switch (org) {
    case OrganizationType::Hierarchical:
      return "hierarchical";
    case OrganizationType::SearchBased:
      return "search_based";
    case OrganizationType::DropdownList:
      return "dropdown_list";
  }
  throw ValidationError("unknown organization type");
}

inline std::string_view to_string(EnvironmentType env) {
  switch (env) {
    case EnvironmentType::LocalCli:
      return "local_cli";
    case EnvironmentType::LocalIde:
      return "local_ide";
    case EnvironmentType::Network:
      return "network";
    case EnvironmentType::Internet:
      return "internet";
  }
  throw ValidationError("unknown environment type");
}

inline OrganizationType organization_from_string(std::string_view text) {
  if (text == "hierarchical") return OrganizationType::Hierarchical;
  if (text == "search_based") return OrganizationType::SearchBased;
  if (text == "dropdown_list") return OrganizationType::DropdownList;
  throw ValidationError("unknown organization type '" + std::string(text) +
                        "' (expected hierarchical|search_based|dropdown_list)");
}

inline EnvironmentType environment_from_string(std::string_view text) {
  if (text == "local_cli") return EnvironmentType::LocalCli;
  if (text == "local_ide") return EnvironmentType::LocalIde;
  if (text == "network") return EnvironmentType::Network;
  if (text == "internet") return EnvironmentType::Internet;
  throw ValidationError("unknown environment type '" + std::string(text) +
                        "' (expected local_cli|local_ide|network|internet)");
}

// One named component and its place in the library.
struct ComponentRecord {
  std::string name;
  std::vector<std::string> path;  // empty for flat libraries
  std::optional<std::string> version;

  friend bool operator==(const ComponentRecord&,
                         const ComponentRecord&) = default;
};

// Identity, factor axes and roster of one component library under
// evaluation. remote_endpoint is required exactly for remote environments.
struct LibraryDescriptor {
  std::string library_id;
  OrganizationType organization = OrganizationType::SearchBased;
  EnvironmentType environment = EnvironmentType::LocalCli;
  std::vector<ComponentRecord> components;
  std::optional<std::string> remote_endpoint;

  void validate() const {
    if (library_id.empty()) {
      throw ValidationError("library_id must be non-empty");
    }
    if (is_remote(environment)) {
      if (!remote_endpoint || remote_endpoint->empty()) {
        throw ValidationError("library '" + library_id +
                              "': remote environment requires a "
                              "remote_endpoint");
      }
    } else if (remote_endpoint) {
      throw ValidationError("library '" + library_id +
                            "': remote_endpoint is only valid for remote "
                            "environments");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& component : components) {
      if (component.name.empty()) {
        throw ValidationError("library '" + library_id +
                              "': component names must be non-empty");
      }
      if (!seen.insert(component.name).second) {
        throw ValidationError("library '" + library_id +
                              "': duplicate component name '" +
                              component.name + "'");
      }
      for (const auto& segment : component.path) {
        if (segment.empty()) {
          throw ValidationError("library '" + library_id + "': component '" +
                                component.name +
                                "' has an empty path segment");
        }
      }
    }
  }

  friend bool operator==(const LibraryDescriptor&,
                         const LibraryDescriptor&) = default;
};

namespace detail {

inline void reject_unknown_fields(const nlohmann::json& object,
                                  std::initializer_list<std::string_view> allowed,
                                  const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    bool known = false;
    for (auto field : allowed) {
      if (key == field) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ValidationError(where + ": unknown field '" + key + "'");
    }
  }
}

inline const nlohmann::json& require_field(const nlohmann::json& object,
                                           std::string_view field,
                                           const std::string& where) {
  auto it = object.find(field);
  if (it == object.end()) {
    throw ValidationError(where + ": missing field '" + std::string(field) +
                          "'");
  }
  return *it;
}

inline std::string require_string(const nlohmann::json& object,
                                  std::string_view field,
                                  const std::string& where) {
  const auto& value = require_field(object, field, where);
  if (!value.is_string()) {
    throw ValidationError(where + ": field '" + std::string(field) +
                          "' must be a string");
  }
  return value.get<std::string>();
}

}  // namespace detail

inline LibraryDescriptor library_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("library document: expected a JSON object");
  }
  detail::reject_unknown_fields(
      doc,
      {"library_id", "organization", "environment", "components",
       "remote_endpoint"},
      "library document");

  LibraryDescriptor descriptor;
  descriptor.library_id =
      detail::require_string(doc, "library_id", "library document");
  descriptor.organization = organization_from_string(
      detail::require_string(doc, "organization", "library document"));
  descriptor.environment = environment_from_string(
      detail::require_string(doc, "environment", "library document"));

  const auto& components =
      detail::require_field(doc, "components", "library document");
  if (!components.is_array()) {
    throw ValidationError("library document: 'components' must be an array");
  }
  std::size_t index = 0;
  for (const auto& entry : components) {
    const std::string where = "components[" + std::to_string(index++) + "]";
    if (!entry.is_object()) {
      throw ValidationError(where + ": expected an object");
    }
    detail::reject_unknown_fields(entry, {"name", "path", "version"}, where);
    ComponentRecord record;
    record.name = detail::require_string(entry, "name", where);
    if (auto it = entry.find("path"); it != entry.end()) {
      if (!it->is_array()) {
        throw ValidationError(where + ": 'path' must be an array of strings");
      }
      for (const auto& segment : *it) {
        if (!segment.is_string()) {
          throw ValidationError(where +
                                ": 'path' must be an array of strings");
        }
        record.path.push_back(segment.get<std::string>());
      }
    }
    if (auto it = entry.find("version"); it != entry.end()) {
      if (!it->is_string()) {
        throw ValidationError(where + ": 'version' must be a string");
      }
      record.version = it->get<std::string>();
    }
    descriptor.components.push_back(std::move(record));
  }

  if (auto it = doc.find("remote_endpoint"); it != doc.end()) {
    if (!it->is_string()) {
      throw ValidationError(
          "library document: 'remote_endpoint' must be a string");
    }
    descriptor.remote_endpoint = it->get<std::string>();
  }

  descriptor.validate();
  return descriptor;
}

inline LibraryDescriptor parse_library(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError(std::string("library document: ") + err.what());
  }
  return library_from_json(doc);
}

inline nlohmann::json library_to_json(const LibraryDescriptor& descriptor) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& component : descriptor.components) {
    nlohmann::json entry;
    entry["name"] = component.name;
    entry["path"] = component.path;
    if (component.version) entry["version"] = *component.version;
    components.push_back(std::move(entry));
  }
  nlohmann::json doc;
  doc["library_id"] = descriptor.library_id;
  doc["organization"] = to_string(descriptor.organization);
  doc["environment"] = to_string(descriptor.environment);
  doc["components"] = std::move(components);
  if (descriptor.remote_endpoint) {
    doc["remote_endpoint"] = *descriptor.remote_endpoint;
  }
  return doc;
}

// Organizedness weights per organization type. Total by construction: every
// type has a strictly positive entry. The defaults follow the rule that a
// faster lookup scheme earns a greater weight; they are configuration, not
// part of the CAQ formula.
class WeightTable {
 public:
  WeightTable(double hierarchical, double search_based, double dropdown_list)
      : hierarchical_(hierarchical),
        search_based_(search_based),
        dropdown_list_(dropdown_list) {}

  static WeightTable defaults() { return WeightTable(1.0, 3.0, 2.0); }

  OrganizednessWeight weight_for(OrganizationType org) const {
    switch (org) {
      case OrganizationType::Hierarchical:
        return hierarchical_;
      case OrganizationType::SearchBased:
        return search_based_;
      case OrganizationType::DropdownList:
        return dropdown_list_;
    }
    throw ValidationError("unknown organization type");
  }

  static WeightTable from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
      throw ValidationError("weight table: expected a JSON object");
    }
    detail::reject_unknown_fields(
        doc, {"hierarchical", "search_based", "dropdown_list"},
        "weight table");
    auto weight = [&doc](std::string_view field) {
      const auto& value =
          detail::require_field(doc, field, "weight table");
      if (!value.is_number()) {
        throw ValidationError("weight table: '" + std::string(field) +
                              "' must be a number");
      }
      return value.get<double>();
    };
    return WeightTable(weight("hierarchical"), weight("search_based"),
                       weight("dropdown_list"));
  }

  static WeightTable parse(std::string_view text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
      throw ValidationError(std::string("weight table: ") + err.what());
    }
    return from_json(doc);
  }

  friend bool operator==(const WeightTable&, const WeightTable&) = default;

 private:
  OrganizednessWeight hierarchical_;
  OrganizednessWeight search_based_;
  OrganizednessWeight dropdown_list_;
};

inline OrganizednessWeight organizedness_weight(const WeightTable& table,
                                                OrganizationType org) {
  return table.weight_for(org);
}

}  // namespace caq
