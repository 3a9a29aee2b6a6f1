#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "caq/errors.hpp"

namespace caq {

// Floor for access times; raw measurements below it are clamped up.
inline constexpr double kAccessTimeFloorSeconds = 1e-6;

// Absolute tolerance for classifying an activeness quotient as exactly 1.
inline constexpr double kAqUnityTolerance = 1e-9;

// Binary availability of a component in a library: 1 if present, 0 if not.
class Availability {
 public:
  constexpr explicit Availability(bool present) noexcept
      : value_(present ? 1 : 0) {}

  static Availability from_int(int value) {
    if (value != 0 && value != 1) {
      throw ValidationError("availability must be 0 or 1, got " +
                            std::to_string(value));
    }
    return Availability(value == 1);
  }

  constexpr int value() const noexcept { return value_; }
  constexpr bool present() const noexcept { return value_ == 1; }

  friend constexpr bool operator==(Availability, Availability) noexcept =
      default;

 private:
  int value_;
};

// Weight expressing how well a library's organization scheme accelerates
// lookup. Strictly positive; carries no upper bound or normalization.
class OrganizednessWeight {
 public:
  explicit OrganizednessWeight(double value) : value_(value) {
    if (!std::isfinite(value) || value <= 0.0) {
      throw ValidationError("organizedness weight must be a positive real");
    }
  }

  double value() const noexcept { return value_; }

  friend bool operator==(const OrganizednessWeight&,
                         const OrganizednessWeight&) noexcept = default;

 private:
  double value_;
};

// Time to resolve one component lookup, in seconds. Never below the floor.
class AccessTime {
 public:
  explicit AccessTime(double seconds) : seconds_(seconds) {
    if (!std::isfinite(seconds) || seconds < kAccessTimeFloorSeconds) {
      throw ValidationError("access time must be >= " +
                            std::to_string(kAccessTimeFloorSeconds) +
                            " seconds");
    }
  }

  // For raw measurements: clamps sub-floor readings up to the floor.
  static AccessTime clamped(double seconds) {
    if (!std::isfinite(seconds) || seconds < 0.0) {
      throw ValidationError("raw elapsed time must be a non-negative real");
    }
    return AccessTime(std::max(seconds, kAccessTimeFloorSeconds));
  }

  double seconds() const noexcept { return seconds_; }

  friend bool operator==(const AccessTime&, const AccessTime&) noexcept =
      default;

 private:
  double seconds_;
};

// Component activeness: readiness of a library to provide one named
// component, per second. Zero exactly when the component is unavailable.
class CaqValue {
 public:
  explicit CaqValue(double per_second) : per_second_(per_second) {
    if (!std::isfinite(per_second) || per_second < 0.0) {
      throw ValidationError("CAQ must be a non-negative real");
    }
  }

  double per_second() const noexcept { return per_second_; }

  friend bool operator==(const CaqValue&, const CaqValue&) noexcept = default;

 private:
  double per_second_;
};

// Skill tally for one person: how many of the required skills they hold.
struct PersonSkills {
  std::string person_id;
  std::uint32_t skills_available = 0;
  std::uint32_t skills_required = 0;

  friend bool operator==(const PersonSkills&, const PersonSkills&) = default;
};

// Dimensionless non-negative ratio; used for RQ, MQ and AQ.
class Quotient {
 public:
  explicit Quotient(double value) : value_(value) {
    if (!std::isfinite(value) || value < 0.0) {
      throw ValidationError("quotient must be a non-negative real");
    }
  }

  double value() const noexcept { return value_; }

  friend bool operator==(const Quotient&, const Quotient&) noexcept = default;

 private:
  double value_;
};

// Readiness bands for an activeness quotient, ordered from least to most
// ready. NotReady covers the AQ = 0 degenerate case the product form allows.
enum class ReadinessClass {
  NotReady,
  LessThanReady,
  ExactlyReady,
  MoreThanReady,
};

inline std::string_view readiness_label(ReadinessClass cls) {
  switch (cls) {
    case ReadinessClass::NotReady:
      return "NOT READY";
    case ReadinessClass::LessThanReady:
      return "LESS THAN READY – NEED MORE RESOURCES AND/OR MANPOWER";
    case ReadinessClass::ExactlyReady:
      return "EXACTLY READY";
    case ReadinessClass::MoreThanReady:
      return "MORE THAN READY";
  }
  throw ValidationError("unknown readiness class");
}

// Component activeness quotient: availability * organizedness / access time.
inline CaqValue compute_caq(Availability a_c, OrganizednessWeight r_l,
                            AccessTime t) {
  return CaqValue(static_cast<double>(a_c.value()) * r_l.value() /
                  t.seconds());
}

// Resources quotient: available over needed hardware/software requirements.
// Nothing needed counts as vacuously ready. May exceed 1 given surplus.
inline Quotient compute_rq(std::size_t hs_available, std::size_t hs_needed) {
  if (hs_needed == 0) return Quotient(1.0);
  return Quotient(static_cast<double>(hs_available) /
                  static_cast<double>(hs_needed));
}

// Per-person skills ratio. A person requiring no skills is vacuously ready.
inline double skill_ratio(const PersonSkills& person) {
  if (person.skills_required == 0) return 1.0;
  return static_cast<double>(person.skills_available) /
         static_cast<double>(person.skills_required);
}

// Manpower quotient: mean of per-person skills ratios. Undefined for an
// empty roster.
inline Quotient compute_mq(std::span<const PersonSkills> persons) {
  if (persons.empty()) {
    throw ValidationError("manpower quotient needs at least one person");
  }
  double sum = 0.0;
  for (const auto& person : persons) sum += skill_ratio(person);
  return Quotient(sum / static_cast<double>(persons.size()));
}

// Activeness quotient: the product of RQ and MQ. Either factor being zero
// zeroes overall readiness.
inline Quotient compute_aq(Quotient rq, Quotient mq) {
  return Quotient(rq.value() * mq.value());
}

inline ReadinessClass interpret_aq(Quotient aq) {
  const double value = aq.value();
  if (std::abs(value - 1.0) <= kAqUnityTolerance) {
    return ReadinessClass::ExactlyReady;
  }
  if (value > 1.0) return ReadinessClass::MoreThanReady;
  if (value == 0.0) return ReadinessClass::NotReady;
  return ReadinessClass::LessThanReady;
}

inline double to_percent(Quotient q) { return q.value() * 100.0; }

}  // namespace caq
