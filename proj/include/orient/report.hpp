#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "orient/cluster_dist.hpp"
#include "orient/montecarlo.hpp"
#include "orient/verifier.hpp"

namespace orient {

inline constexpr const char* kToolName = "orient";
inline constexpr const char* kToolVersion = "0.1.0";

// 64-bit FNV-1a over a byte string; used for the input digest so identical
// inputs yield identical reports.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 14695981039346656037ULL);
std::string digest_hex(std::uint64_t value);

// Accumulates the outcome of one CLI run: a list of typed entries plus
// summary counts. Only inequality checks contribute to checked/held/violated;
// sign findings, Monte Carlo estimates, and distributions are informational.
class RunReport {
 public:
  std::string subcommand;
  std::string input_digest;
  double wall_time_ms = 0.0;

  void add_inequality(const InequalityReport& rep);
  void add_sweep(const std::string& name, const SweepSummary& sum);
  void add_sign_search(const SignSearchResult& result);
  void add_mc(const McEstimate& est);
  void add_distribution(const Graph& g, const ClusterDistribution& law);
  void add_joint_distribution(const Graph& g, const JointClusterDistribution& law);
  void note_skipped(std::uint64_t count);

  std::uint64_t checked() const { return checked_; }
  std::uint64_t held() const { return held_; }
  std::uint64_t violated() const { return violated_; }
  std::uint64_t skipped() const { return skipped_; }

  // 0 = all checks held; 2 = a theorem inequality violated (software
  // defect); 3 = a conjecture finding (e.g. bunkbed violation). Usage errors
  // (exit 1) are raised as exceptions before a report exists.
  int exit_code() const;

  std::string to_json() const;
  std::string to_text() const;

 private:
  nlohmann::ordered_json entries_ = nlohmann::ordered_json::array();
  std::uint64_t checked_ = 0, held_ = 0, violated_ = 0, skipped_ = 0;
  bool theorem_violation_ = false;
  bool conjecture_finding_ = false;

  void tally(const InequalityReport& rep);
};

// Double rendered as a decimal string with 12 significant digits.
std::string format_decimal(double value);

nlohmann::ordered_json to_json_entry(const InequalityReport& rep);
nlohmann::ordered_json to_json_entry(const SignFinding& finding);
nlohmann::ordered_json to_json_entry(const McEstimate& est);
nlohmann::ordered_json to_json_entry(const Graph& g, const ClusterDistribution& law);
nlohmann::ordered_json to_json_entry(const Graph& g, const JointClusterDistribution& law);

}  // namespace orient
