#include "ecfjump/plan.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <variant>

#include "ecfjump/errors.hpp"

namespace ecf {

namespace {

[[noreturn]] void bad(int line, const std::string& message) {
  raise(Errc::data_format,
        "plan line " + std::to_string(line) + ": " + message);
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct KeyValue {
  std::string value;
  int line = 0;
  bool used = false;
};

struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, KeyValue> keys;

  // Marks the key used; empty optional-style lookup via pointer.
  KeyValue* find(const std::string& key) {
    auto it = keys.find(key);
    if (it == keys.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }
  std::string require(const std::string& key) {
    KeyValue* kv = find(key);
    if (!kv) bad(line, "section [" + name + "] is missing key '" + key + "'");
    return kv->value;
  }
  void check_all_used() const {
    for (const auto& [key, kv] : keys) {
      if (!kv.used) {
        bad(kv.line, "unknown key '" + key + "' in section [" + name + "]");
      }
    }
  }
};

double parse_double(const std::string& text, int line) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    bad(line, "expected a number, got '" + text + "'");
  }
  return v;
}

long long parse_int(const std::string& text, int line) {
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size()) {
    bad(line, "expected an integer, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& text, int line) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || text[0] == '-') {
    bad(line, "expected an unsigned integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, int line) {
  if (text == "true") return true;
  if (text == "false") return false;
  bad(line, "expected true or false, got '" + text + "'");
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::istringstream in(text);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

SizeLaw parse_size_law(Section& s, const std::string& swept) {
  const std::string kind = s.require("size");
  const int line = s.line;
  if (kind == "normal") {
    NormalSize sz;
    if (swept == "tau") {
      if (s.keys.count("mean")) {
        bad(line, "'mean' conflicts with the tau sweep");
      }
    } else {
      sz.tau = parse_double(s.require("mean"), line);
    }
    if (swept == "eta") {
      if (s.keys.count("var")) bad(line, "'var' conflicts with the eta sweep");
    } else {
      sz.eta_var = parse_double(s.require("var"), line);
      if (sz.eta_var < 0.0) bad(line, "size variance must be non-negative");
    }
    return sz;
  }
  if (!swept.empty()) {
    bad(line, "parameter sweeps need size = normal");
  }
  if (kind == "double-exponential") {
    DoubleExponentialSize sz;
    sz.location = parse_double(s.require("location"), line);
    sz.scale = parse_double(s.require("scale"), line);
    if (sz.scale <= 0.0) bad(line, "size scale must be positive");
    return sz;
  }
  if (kind == "constant") {
    ConstantSize sz;
    sz.h = parse_double(s.require("height"), line);
    return sz;
  }
  bad(line, "unknown size law '" + kind + "'");
}

JumpSpec parse_jump_spec(Section& s, const std::string& swept,
                         std::optional<double>* bern_intensity) {
  const std::string kind = s.require("kind");
  const int line = s.line;
  if (kind == "none") {
    if (!swept.empty()) bad(line, "cannot sweep a jump-free cell");
    return NoJumps{};
  }
  if (kind == "constant") {
    if (!swept.empty()) bad(line, "parameter sweeps need size = normal");
    ConstantJumps j;
    j.lambda = parse_double(s.require("lambda"), line);
    if (j.lambda < 0.0) bad(line, "lambda must be non-negative");
    j.h = parse_double(s.require("height"), line);
    return j;
  }
  if (kind == "compound-poisson") {
    CompoundPoisson j;
    j.lambda = parse_double(s.require("lambda"), line);
    if (j.lambda < 0.0) bad(line, "lambda must be non-negative");
    j.size = parse_size_law(s, swept);
    return j;
  }
  if (kind == "bernoulli") {
    BernoulliJumps j;
    KeyValue* prob = s.find("prob");
    KeyValue* lambda = s.find("lambda");
    if (!!prob == !!lambda) {
      bad(line, "bernoulli needs exactly one of 'prob' or 'lambda'");
    }
    if (prob) {
      j.prob_per_step = parse_double(prob->value, prob->line);
      if (!(j.prob_per_step >= 0.0 && j.prob_per_step <= 1.0)) {
        bad(prob->line, "prob must lie in [0, 1]");
      }
    } else {
      // Per-step probability lambda * dt; dt depends on the cell's n, so
      // only the intensity is recorded here and resolved per cell.
      const double lam = parse_double(lambda->value, lambda->line);
      if (lam < 0.0) bad(lambda->line, "lambda must be non-negative");
      *bern_intensity = lam;
    }
    j.size = parse_size_law(s, swept);
    return j;
  }
  bad(line, "unknown jump kind '" + kind + "'");
}

// Patches the swept normal-size parameter into a copied jump spec.
void set_swept_param(JumpSpec* jumps, const std::string& swept, double value) {
  NormalSize* sz = nullptr;
  if (auto* cp = std::get_if<CompoundPoisson>(jumps)) {
    sz = std::get_if<NormalSize>(&cp->size);
  } else if (auto* be = std::get_if<BernoulliJumps>(jumps)) {
    sz = std::get_if<NormalSize>(&be->size);
  }
  if (!sz) raise(Errc::invalid_argument, "sweep needs normal jump sizes");
  if (swept == "tau") {
    sz->tau = value;
  } else {
    sz->eta_var = value;
  }
}

}  // namespace

ExperimentPlan parse_plan(std::istream& in) {
  Section plan_s, grid_s, model_s;
  std::vector<std::pair<std::string, Section>> jump_sections;
  Section* current = nullptr;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') bad(line_no, "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name == "plan" || name == "grid" || name == "model") {
        Section* s = name == "plan" ? &plan_s
                     : name == "grid" ? &grid_s
                                      : &model_s;
        if (s->line != 0) bad(line_no, "duplicate section [" + name + "]");
        s->name = name;
        s->line = line_no;
        current = s;
      } else if (name == "jumps" || name.rfind("jumps.", 0) == 0) {
        std::string label =
            name == "jumps" ? "" : name.substr(std::string("jumps.").size());
        for (const auto& js : jump_sections) {
          if (js.first == label) bad(line_no, "duplicate section [" + name + "]");
        }
        jump_sections.emplace_back(label, Section{});
        Section& s = jump_sections.back().second;
        s.name = name;
        s.line = line_no;
        current = &s;
      } else {
        bad(line_no, "unknown section [" + name + "]");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) bad(line_no, "expected 'key = value'");
    if (!current) bad(line_no, "key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) bad(line_no, "empty key");
    if (value.empty()) bad(line_no, "empty value for key '" + key + "'");
    if (current->keys.count(key)) {
      bad(line_no, "duplicate key '" + key + "'");
    }
    current->keys[key] = KeyValue{value, line_no, false};
  }

  if (plan_s.line == 0) raise(Errc::data_format, "plan file has no [plan] section");
  if (grid_s.line == 0) raise(Errc::data_format, "plan file has no [grid] section");

  ExperimentPlan plan;
  plan.name = plan_s.require("name");
  const std::string kind = plan_s.require("kind");
  if (kind == "level") {
    plan.kind = StudyKind::level;
  } else if (kind == "power") {
    plan.kind = StudyKind::power;
  } else if (kind == "power-curve") {
    plan.kind = StudyKind::power_curve;
  } else {
    bad(plan_s.line, "unknown study kind '" + kind + "'");
  }
  plan.replications = static_cast<int>(
      parse_int(plan_s.require("replications"), plan_s.line));
  if (plan.replications < 1) bad(plan_s.line, "replications must be >= 1");
  if (KeyValue* kv = plan_s.find("alpha")) {
    plan.alpha = parse_double(kv->value, kv->line);
    if (!(plan.alpha > 0.0 && plan.alpha < 1.0)) {
      bad(kv->line, "alpha must lie strictly between 0 and 1");
    }
  }
  if (KeyValue* kv = plan_s.find("seed")) {
    plan.base_seed = parse_u64(kv->value, kv->line);
  }
  if (KeyValue* kv = plan_s.find("tests")) {
    plan.run_cluster = false;
    plan.run_st = false;
    for (const std::string& t : split_words(kv->value)) {
      if (t == "cluster") {
        plan.run_cluster = true;
      } else if (t == "st") {
        plan.run_st = true;
      } else {
        bad(kv->line, "unknown test '" + t + "'");
      }
    }
    if (!plan.run_cluster && !plan.run_st) bad(kv->line, "tests list is empty");
  }
  if (KeyValue* kv = plan_s.find("keep-raw")) {
    plan.keep_raw = parse_bool(kv->value, kv->line);
  }
  if (KeyValue* kv = plan_s.find("slope")) {
    if (kv->value == "local-average") {
      plan.slope_mode = SlopeMode::local_average;
    } else if (kv->value == "single-spacing") {
      plan.slope_mode = SlopeMode::single_spacing;
    } else {
      bad(kv->line, "unknown slope mode '" + kv->value + "'");
    }
  }
  plan_s.check_all_used();

  // Grid.
  std::vector<std::size_t> n_values;
  {
    KeyValue* kv = grid_s.find("n");
    if (!kv) bad(grid_s.line, "section [grid] is missing key 'n'");
    for (const std::string& w : split_words(kv->value)) {
      const long long n = parse_int(w, kv->line);
      if (n < 3) bad(kv->line, "grid n must be at least 3");
      n_values.push_back(static_cast<std::size_t>(n));
    }
    if (n_values.empty()) bad(kv->line, "grid n list is empty");
  }
  std::string swept;
  std::vector<double> swept_values;
  if (plan.kind == StudyKind::power_curve) {
    KeyValue* tau = grid_s.find("tau");
    KeyValue* eta = grid_s.find("eta");
    if (!!tau == !!eta) {
      bad(grid_s.line, "power curves need exactly one of 'tau' or 'eta'");
    }
    KeyValue* kv = tau ? tau : eta;
    swept = tau ? "tau" : "eta";
    for (const std::string& w : split_words(kv->value)) {
      const double v = parse_double(w, kv->line);
      if (swept == "eta" && v < 0.0) {
        bad(kv->line, "eta values must be non-negative");
      }
      swept_values.push_back(v);
    }
    if (swept_values.empty()) bad(kv->line, "sweep list is empty");
    plan.param_name = swept;
  }
  grid_s.check_all_used();

  // Model.
  double mu = 0.0;
  double sigma = 1.0;
  if (model_s.line != 0) {
    if (KeyValue* kv = model_s.find("mu")) mu = parse_double(kv->value, kv->line);
    if (KeyValue* kv = model_s.find("sigma")) {
      sigma = parse_double(kv->value, kv->line);
      if (!(sigma > 0.0)) bad(kv->line, "sigma must be positive");
    }
    model_s.check_all_used();
  }

  // Jump sections; none at all means a single jump-free configuration.
  struct JumpConfig {
    std::string label;
    JumpSpec jumps;
    std::optional<double> bern_intensity;
  };
  std::vector<JumpConfig> configs;
  if (jump_sections.empty()) {
    if (!swept.empty()) {
      raise(Errc::data_format, "power curves need a [jumps] section");
    }
    configs.push_back({"none", NoJumps{}, std::nullopt});
  } else {
    if (!swept.empty() && jump_sections.size() != 1) {
      raise(Errc::data_format, "power curves need exactly one [jumps] section");
    }
    for (auto& [label, section] : jump_sections) {
      JumpConfig cfg;
      cfg.jumps = parse_jump_spec(section, swept, &cfg.bern_intensity);
      cfg.label = label.empty() ? section.require("kind") : label;
      section.check_all_used();
      configs.push_back(std::move(cfg));
    }
  }

  // Cells: jump sections outermost, then n, then the swept values.
  for (const JumpConfig& cfg : configs) {
    for (std::size_t n : n_values) {
      ModelSpec model;
      model.mu = mu;
      model.sigma = sigma;
      model.n = n;
      model.jumps = cfg.jumps;
      if (cfg.bern_intensity) {
        std::get<BernoulliJumps>(model.jumps).prob_per_step =
            *cfg.bern_intensity * (ModelSpec::horizon / static_cast<double>(n));
      }
      if (swept.empty()) {
        ExperimentCell cell;
        cell.label = "n=" + std::to_string(n) + ",jumps=" + cfg.label;
        cell.model = model;
        plan.cells.push_back(std::move(cell));
      } else {
        for (double v : swept_values) {
          ExperimentCell cell;
          cell.model = model;
          set_swept_param(&cell.model.jumps, swept, v);
          cell.param = v;
          cell.label =
              "n=" + std::to_string(n) + "," + swept + "=" + short_number(v);
          plan.cells.push_back(std::move(cell));
        }
      }
    }
  }
  return plan;
}

ExperimentPlan parse_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::data_format, "cannot open plan file '" + path + "'");
  return parse_plan(in);
}

}  // namespace ecf
