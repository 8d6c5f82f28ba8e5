#include <cmath>
#include <cstdio>
#include <sstream>

#include "masr/approximation.hpp"
#include "masr/cost_model.hpp"
#include "masr/io.hpp"

namespace masr {

namespace {

int parse_int(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size())
    throw FormatError("line " + std::to_string(line) + ": expected an integer, got '" + token + "'");
  return value;
}

double parse_double(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size() || !std::isfinite(value))
    throw FormatError("line " + std::to_string(line) + ": expected a number, got '" + token + "'");
  return value;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  // Prefer the short form when it round-trips.
  char shorter[64];
  std::snprintf(shorter, sizeof(shorter), "%.10g", value);
  return std::stod(shorter) == value ? shorter : buf;
}

}  // namespace

Plan parse_plan(const std::string& text) {
  Plan plan;
  std::istringstream in(text);
  std::string raw;
  std::string phase;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty()) continue;

    if (tokens[0] == "phase") {
      if (tokens.size() != 2)
        throw FormatError("line " + std::to_string(line_no) + ": phase takes one name");
      phase = tokens[1];
      continue;
    }
    if (tokens[0] == "declare") {
      if (tokens.size() != 3)
        throw FormatError("line " + std::to_string(line_no) + ": declare takes a key and a value");
      if (tokens[1] == "turning_degrees")
        plan.declared.turning_degrees = parse_double(tokens[2], line_no);
      else if (tokens[1] == "translation_links")
        plan.declared.translation_links = parse_int(tokens[2], line_no);
      else
        throw FormatError("line " + std::to_string(line_no) + ": unknown total '" + tokens[1] + "'");
      continue;
    }

    PlanStep step;
    step.phase = phase;
    for (std::size_t k = 0; k < tokens.size();) {
      if (k + 2 >= tokens.size())
        throw FormatError("line " + std::to_string(line_no) + ": incomplete clause '" + tokens[k] + "'");
      if (tokens[k] == "rotate") {
        step.actions.emplace_back(
            Rotate{parse_int(tokens[k + 1], line_no), parse_double(tokens[k + 2], line_no)});
      } else if (tokens[k] == "translate") {
        step.actions.emplace_back(
            Translate{parse_int(tokens[k + 1], line_no), parse_int(tokens[k + 2], line_no)});
      } else {
        throw FormatError("line " + std::to_string(line_no) + ": unknown clause '" + tokens[k] + "'");
      }
      k += 3;
    }
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

Plan load_plan(const std::string& path) { return parse_plan(read_text_file(path)); }

std::string format_plan(const Plan& plan) {
  std::ostringstream out;
  if (plan.declared.turning_degrees)
    out << "declare turning_degrees " << format_number(*plan.declared.turning_degrees) << '\n';
  if (plan.declared.translation_links)
    out << "declare translation_links " << *plan.declared.translation_links << '\n';
  std::string phase;
  for (const auto& step : plan.steps) {
    if (step.phase != phase) {
      out << "phase " << step.phase << '\n';
      phase = step.phase;
    }
    bool first = true;
    for (const auto& action : step.actions) {
      out << (first ? "" : " ");
      first = false;
      if (const auto* r = std::get_if<Rotate>(&action))
        out << "rotate " << r->joint << ' ' << format_number(r->degrees);
      else {
        const auto& t = std::get<Translate>(action);
        out << "translate " << t.from << ' ' << t.to;
      }
    }
    out << '\n';
  }
  return out.str();
}

Plan plan_from_path(const PiecewiseLinearPath& path, const ActuatorPlacement& initial) {
  const TraversalCount count = count_traversals(path, initial);
  Plan plan;
  std::vector<int> at = initial.joints();
  const auto& points = path.breakpoints();
  for (std::size_t s = 0; s < count.steps; ++s) {
    PlanStep step;
    const auto& next = count.actuator_joints[s];
    for (std::size_t a = 0; a < at.size(); ++a)
      if (next[a] != at[a]) step.actions.emplace_back(Translate{at[a], next[a]});
    at = next;
    for (int joint : path.active_sets()[s]) {
      const auto i = static_cast<Eigen::Index>(joint - 1);
      const double degrees = (points[s + 1][i] - points[s][i]) * 180.0 / std::numbers::pi;
      step.actions.emplace_back(Rotate{joint, degrees});
    }
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

}  // namespace masr
