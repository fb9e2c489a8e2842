#pragma once

#include <string>
#include <variant>

#include "irrtopo/definable.hpp"

namespace irrtopo {

/// Witness attached to a refutation: a set, a point, or a net in the
/// net-spec grammar.
using Witness = std::variant<std::monostate, DefinableSet, PointId, std::string>;

/// Three-valued outcome of an infinitary check.
struct Verdict {
  enum class Status { Proven, Refuted, Unknown };

  Status status = Status::Unknown;
  std::string certificate;  // rule trace (Proven), explanation (Refuted) or budget (Unknown)
  Witness witness;

  static Verdict proven(std::string cert) { return {Status::Proven, std::move(cert), {}}; }
  static Verdict refuted(std::string why, Witness w = {}) { return {Status::Refuted, std::move(why), std::move(w)}; }
  static Verdict unknown(std::string budget) { return {Status::Unknown, std::move(budget), {}}; }

  bool proven() const { return status == Status::Proven; }
  bool refuted() const { return status == Status::Refuted; }
};

inline const char* to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Proven: return "proven";
    case Verdict::Status::Refuted: return "refuted";
    case Verdict::Status::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace irrtopo
