#include "orient/report.hpp"

#include <cstdio>

namespace orient {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string digest_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string format_decimal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

nlohmann::ordered_json names_json(const std::vector<std::string>& names) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const std::string& n : names) arr.push_back(n);
  return arr;
}

nlohmann::ordered_json cluster_json(const Graph& g, std::uint64_t key) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int v : VertexSet(key)) arr.push_back(g.name(v));
  return arr;
}

}  // namespace

nlohmann::ordered_json to_json_entry(const InequalityReport& rep) {
  nlohmann::ordered_json j;
  j["type"] = "inequality";
  j["name"] = rep.name;
  j["instance"] = rep.instance;
  j["lhs"] = rep.lhs.str();
  j["rhs"] = rep.rhs.str();
  j["holds"] = rep.holds;
  j["margin"] = rep.margin.str();
  j["conjecture"] = rep.conjecture;
  if (!rep.note.empty()) j["note"] = rep.note;
  if (!rep.diffs.empty()) {
    nlohmann::ordered_json diffs = nlohmann::ordered_json::array();
    for (const KeyDiff& d : rep.diffs) {
      nlohmann::ordered_json dj;
      dj["key"] = names_json(d.key_u);
      if (!d.key_w.empty()) dj["key_w"] = names_json(d.key_w);
      dj["lhs"] = d.lhs.str();
      dj["rhs"] = d.rhs.str();
      diffs.push_back(std::move(dj));
    }
    j["diffs"] = std::move(diffs);
  }
  return j;
}

nlohmann::ordered_json to_json_entry(const SignFinding& finding) {
  nlohmann::ordered_json j;
  j["type"] = "sign";
  j["n"] = finding.n;
  j["edge_mask"] = finding.edge_mask;
  j["graph"] = finding.graph_desc;
  j["mode"] = finding.mode;
  j["conditioned"] = finding.conditioned;
  j["s"] = finding.s;
  if (!finding.t.empty()) j["t"] = finding.t;
  j["a"] = finding.a;
  j["b"] = finding.b;
  j["covariance"] = finding.covariance.str();
  j["sign"] = finding.sign;
  return j;
}

nlohmann::ordered_json to_json_entry(const McEstimate& est) {
  nlohmann::ordered_json j;
  j["type"] = "mc";
  j["model"] = est.model_tag;
  j["samples"] = est.samples;
  j["seed"] = est.seed;
  j["estimate"] = format_decimal(est.estimate);
  j["standard_error"] = format_decimal(est.standard_error);
  return j;
}

nlohmann::ordered_json to_json_entry(const Graph& g, const ClusterDistribution& law) {
  nlohmann::ordered_json j;
  j["type"] = "distribution";
  j["model"] = law.model_tag;
  j["root"] = g.name(law.root);
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [key, prob] : law.probs) {
    nlohmann::ordered_json e;
    e["cluster"] = cluster_json(g, key);
    e["probability"] = prob.str();
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

nlohmann::ordered_json to_json_entry(const Graph& g, const JointClusterDistribution& law) {
  nlohmann::ordered_json j;
  j["type"] = "joint_distribution";
  j["model"] = law.model_tag;
  j["root_u"] = g.name(law.root_u);
  j["root_w"] = g.name(law.root_w);
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [key, prob] : law.probs) {
    nlohmann::ordered_json e;
    e["cluster_u"] = cluster_json(g, key.first);
    e["cluster_w"] = cluster_json(g, key.second);
    e["probability"] = prob.str();
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

void RunReport::tally(const InequalityReport& rep) {
  ++checked_;
  if (rep.holds) {
    ++held_;
  } else {
    ++violated_;
    if (rep.conjecture) conjecture_finding_ = true;
    else theorem_violation_ = true;
  }
}

void RunReport::add_inequality(const InequalityReport& rep) {
  tally(rep);
  entries_.push_back(to_json_entry(rep));
}

void RunReport::add_sweep(const std::string& name, const SweepSummary& sum) {
  checked_ += sum.instances;
  held_ += sum.held;
  skipped_ += sum.skipped;
  nlohmann::ordered_json j;
  j["type"] = "sweep";
  j["name"] = name;
  j["graphs"] = sum.graphs;
  j["instances"] = sum.instances;
  j["held"] = sum.held;
  j["violated"] = sum.violated;
  j["skipped"] = sum.skipped;
  entries_.push_back(std::move(j));
  for (const InequalityReport& rep : sum.violations) {
    ++violated_;
    if (rep.conjecture) conjecture_finding_ = true;
    else theorem_violation_ = true;
    entries_.push_back(to_json_entry(rep));
  }
}

void RunReport::add_sign_search(const SignSearchResult& result) {
  skipped_ += result.skipped;
  nlohmann::ordered_json j;
  j["type"] = "sign_search";
  j["instances"] = result.instances;
  j["findings"] = result.findings.size();
  j["skipped"] = result.skipped;
  entries_.push_back(std::move(j));
  for (const SignFinding& f : result.findings) entries_.push_back(to_json_entry(f));
}

void RunReport::add_mc(const McEstimate& est) { entries_.push_back(to_json_entry(est)); }

void RunReport::add_distribution(const Graph& g, const ClusterDistribution& law) {
  entries_.push_back(to_json_entry(g, law));
}

void RunReport::add_joint_distribution(const Graph& g, const JointClusterDistribution& law) {
  entries_.push_back(to_json_entry(g, law));
}

void RunReport::note_skipped(std::uint64_t count) { skipped_ += count; }

int RunReport::exit_code() const {
  if (theorem_violation_) return 2;
  if (conjecture_finding_) return 3;
  return 0;
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["subcommand"] = subcommand;
  j["input_digest"] = input_digest;
  j["entries"] = entries_;
  j["summary"] = {{"checked", checked_},
                  {"held", held_},
                  {"violated", violated_},
                  {"skipped", skipped_}};
  j["wall_time_ms"] = format_decimal(wall_time_ms);
  return j.dump(2) + "\n";
}

std::string RunReport::to_text() const {
  std::string out;
  out += std::string(kToolName) + " " + kToolVersion + " — " + subcommand + "\n";
  out += "input digest: " + input_digest + "\n";
  for (const auto& e : entries_) {
    const std::string type = e.value("type", "");
    if (type == "inequality") {
      const bool holds = e.value("holds", false);
      const bool conjecture = e.value("conjecture", false);
      out += holds ? "[ok]      " : (conjecture ? "[finding] " : "[VIOLATED] ");
      out += e.value("name", "") + "  " + e.value("instance", "");
      out += "  lhs=" + e.value("lhs", "") + " rhs=" + e.value("rhs", "") +
             " margin=" + e.value("margin", "");
      if (e.contains("note")) out += "  (" + e["note"].get<std::string>() + ")";
      out += "\n";
    } else if (type == "sweep") {
      out += "[sweep]   " + e.value("name", "") + "  graphs=" +
             std::to_string(e.value("graphs", std::uint64_t(0))) +
             " instances=" + std::to_string(e.value("instances", std::uint64_t(0))) +
             " held=" + std::to_string(e.value("held", std::uint64_t(0))) +
             " violated=" + std::to_string(e.value("violated", std::uint64_t(0))) +
             " skipped=" + std::to_string(e.value("skipped", std::uint64_t(0))) + "\n";
    } else if (type == "sign") {
      out += "[sign]    " + e.value("graph", "") + "  mode=" + e.value("mode", "") + " s=" +
             e.value("s", "");
      if (e.contains("t")) out += " t=" + e["t"].get<std::string>();
      out += " a=" + e.value("a", "") + " b=" + e.value("b", "") +
             "  cov=" + e.value("covariance", "") +
             " sign=" + std::to_string(e.value("sign", 0)) + "\n";
    } else if (type == "sign_search") {
      out += "[search]  instances=" + std::to_string(e.value("instances", std::uint64_t(0))) +
             " findings=" + std::to_string(e.value("findings", std::uint64_t(0))) +
             " skipped=" + std::to_string(e.value("skipped", std::uint64_t(0))) + "\n";
    } else if (type == "mc") {
      out += "[mc]      model=" + e.value("model", "") + " samples=" +
             std::to_string(e.value("samples", std::uint64_t(0))) +
             " seed=" + std::to_string(e.value("seed", std::uint64_t(0))) +
             " estimate=" + e.value("estimate", "") + " se=" + e.value("standard_error", "") +
             "\n";
    } else if (type == "distribution" || type == "joint_distribution") {
      out += "[dist]    model=" + e.value("model", "");
      if (e.contains("root")) out += " root=" + e["root"].get<std::string>();
      if (e.contains("root_u"))
        out += " roots=" + e["root_u"].get<std::string>() + "," + e["root_w"].get<std::string>();
      out += "\n";
      for (const auto& entry : e["entries"]) {
        auto join = [](const nlohmann::ordered_json& arr) {
          std::string s = "{";
          for (const auto& item : arr) {
            if (s.size() > 1) s += ",";
            s += item.get<std::string>();
          }
          return s + "}";
        };
        out += "          ";
        if (entry.contains("cluster")) out += join(entry["cluster"]);
        else out += join(entry["cluster_u"]) + " x " + join(entry["cluster_w"]);
        out += "  " + entry["probability"].get<std::string>() + "\n";
      }
    }
  }
  out += "summary: checked=" + std::to_string(checked_) + " held=" + std::to_string(held_) +
         " violated=" + std::to_string(violated_) + " skipped=" + std::to_string(skipped_) +
         "\n";
  out += "wall_time_ms: " + format_decimal(wall_time_ms) + "\n";
  return out;
}

}  // namespace orient
