#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "modstrat/stmod/stmod.hpp"

namespace modstrat {

/// Settings shared by the CLI commands. Unset fields fall back to the
/// per-suite defaults.
struct RunConfig {
  std::vector<std::string> groups;  // builtin names or JSON group files
  std::optional<std::string> ring;
  std::optional<int> cap;
  std::optional<int> tate_range;
  std::optional<int> nil_bound;
  std::optional<int> count;
  std::uint64_t seed = 1;

  /// Throws InvalidInput on non-positive bounds.
  void validate() const;
};

/// Builtin name, or a path to a group JSON file.
GroupPtr resolve_group(const std::string& source);

/// Module specs: trivial, regular, free:n, perm:g1,g2,.. (permutation lattice
/// on the cosets of the subgroup generated by the listed elements),
/// sign:g1,.. (index-2 subgroup), omega:n, dual:<spec>, Lzeta:<poly> (Carlson
/// module of a cohomology class written in the presentation generators) and
/// file:<path> (lattice JSON).
Lattice parse_module(const std::string& spec, const GroupPtr& g, const CoeffRing& ring, int cap);

const std::vector<std::string>& suite_names();

using ReportSink = std::function<void(const CheckReport&)>;

/// Streams one report per check; returns true iff every check passed.
bool run_suite(const std::string& suite, const RunConfig& cfg, const ReportSink& sink);

nlohmann::json cohomology_report(const RunConfig& cfg);
nlohmann::json support_report(const RunConfig& cfg, const std::string& module);

}  // namespace modstrat
