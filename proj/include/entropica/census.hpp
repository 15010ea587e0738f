#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entropica/algebra.hpp"
#include "entropica/clone.hpp"
#include "entropica/gep.hpp"

namespace entropica {

// Enumeration and classification of small groupoids.

struct EnumerationOptions {
  std::size_t order = 2;  // 1..4
  bool idempotent = false;
  bool commutative = false;
  /// Keep only tables that are lexicographically least among all relabelings.
  bool up_to_iso = false;
};

/// Number of tables before the isomorphism filter. Throws PreconditionError
/// outside 1..4 and for more than 4^12 tables (order 4 needs the idempotent
/// or commutative filter).
std::size_t enumeration_size(const EnumerationOptions& options);

/// Table number `index`: the unconstrained cells in row-major order read as
/// a base-n numeral, first cell most significant.
std::vector<Elem> enumeration_table(const EnumerationOptions& options, std::size_t index);

/// Lexicographically least table over all relabelings.
std::vector<Elem> canonical_table(std::size_t n, const std::vector<Elem>& table);

/// Groupoid named by its digest, on elements a, b, c, d.
Algebra groupoid_from_table(std::size_t n, const std::vector<Elem>& table);

/// Table entries as digits, row-major ("022212012").
std::string digest(const std::vector<Elem>& table);

struct ClassificationRecord {
  std::size_t index = 0;
  std::size_t order = 0;
  std::string digest;
  std::string canonical;
  bool idempotent = false;
  bool commutative = false;
  bool associative = false;
  bool left_cancellative = false;
  bool right_cancellative = false;
  bool left_unit = false;
  bool right_unit = false;
  bool unit = false;
  bool entropic = false;
  bool sub_closed = false;
  Verdict gep = Verdict::unknown;
  /// GEP failure shown by the pruned domains alone.
  bool gep_refuted_by_domains = false;
  /// Some witness (t, s) has t or s among x, y, xy, yx.
  bool gep_witness_linear = false;
  /// Some witness has t = s.
  bool gep_witness_same = false;
  /// The two flags above come from a complete clone.
  bool witness_flags_exact = false;
  /// The witness found satisfies all five pseudo-distributive laws.
  bool pseudo_distributive = false;
  bool cross_identities = false;
  /// t and s of the first witness, empty unless gep holds.
  std::string t, s;
  std::size_t clone_size = 0;  // 0 when not computed
};

struct ClassifyOptions {
  /// Bounds for the binary clone used for the full search.
  CloneOptions clone;
  /// Depth of the cheap first search.
  std::size_t quick_depth = 2;
};

/// Classification of a groupoid.
ClassificationRecord classify(const Algebra& A, const ClassifyOptions& options = {});

/// Checked consequences; each counts records that contradict it.
enum class Property {
  entropic_implies_gep,
  gep_implies_sub_closed,
  linear_witness,
  same_witness,
  bands,
  commutative_idempotent,
  cancellative,
  one_sided_unit,
  unit,
  pseudo_distributive,
  cross_identities,
};

std::vector<Property> all_properties();
std::string property_name(Property p);
/// Whether the record contradicts the property.
bool violates(const ClassificationRecord& r, Property p);

struct CensusSummary {
  std::size_t tables = 0;   // indices visited
  std::size_t records = 0;  // classified (after the isomorphism filter)
  std::size_t idempotent = 0;
  std::size_t entropic = 0;
  std::size_t sub_closed = 0;
  std::size_t gep_holds = 0;
  std::size_t gep_fails = 0;
  std::size_t gep_unknown = 0;
  std::size_t gep_refuted_by_domains = 0;
  std::size_t sub_closed_gep_fails = 0;
  std::size_t gep_not_entropic = 0;
  /// Digests of idempotent records with gep holds and not entropic.
  std::vector<std::string> conjecture_counterexamples;
  /// Canonical digests of records with sub_closed and gep fails, sorted.
  std::vector<std::string> sub_closed_gep_fails_classes;
  std::map<std::string, std::size_t> violations;
  std::map<std::string, std::string> first_violation;  // least digest

  void add(const ClassificationRecord& r);
  /// Order-independent merge.
  void merge(const CensusSummary& other);
  friend bool operator==(const CensusSummary&, const CensusSummary&) = default;
};

struct CensusOptions {
  EnumerationOptions enumeration;
  ClassifyOptions classify;
  std::size_t jobs = 1;
  /// Index range [begin, end) of the enumeration; end is clamped.
  std::size_t begin = 0;
  std::size_t end = static_cast<std::size_t>(-1);
  /// Work unit for threads and bookmarks.
  std::size_t chunk = 2048;
  /// Resume from and update this file.
  std::optional<std::filesystem::path> bookmark;
  /// Called in index order for every record of every chunk processed.
  std::function<void(const ClassificationRecord&)> on_record;
};

/// Runs the census. Throws PreconditionError for a bookmark written with
/// other parameters.
CensusSummary run_census(const CensusOptions& options);

/// KEY: value report.
std::string format_summary(const CensusOptions& options, const CensusSummary& s);

std::string csv_header();
std::string csv_row(const ClassificationRecord& r);

}  // namespace entropica
