#include "broccoli/outcome.hpp"

#include <string>

#include "broccoli/errors.hpp"

namespace broccoli {

Comparison compare_fitness(const Outcome& a, const Outcome& b, Mode mode) {
  if (a.verdict != b.verdict) {
    return a.verdict == Verdict::Satisfied ? Comparison::ABetter : Comparison::BBetter;
  }
  if (a.steps != b.steps) {
    const bool a_fewer = a.steps < b.steps;
    return (a_fewer == (mode == Mode::Minimise)) ? Comparison::ABetter : Comparison::BBetter;
  }
  return Comparison::Equal;
}

Comparison compare_outcomes(const Outcome& a, const Outcome& b, Mode mode) {
  const Comparison c = compare_fitness(a, b, mode);
  if (c != Comparison::Equal) return c;
  if (a.size != b.size) return a.size < b.size ? Comparison::ABetter : Comparison::BBetter;
  return Comparison::Equal;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

std::string_view to_string(Mode m) { return m == Mode::Minimise ? "min" : "max"; }

Verdict verdict_from_string(std::string_view s) {
  if (s == "satisfied") return Verdict::Satisfied;
  if (s == "violated") return Verdict::Violated;
  if (s == "undetermined") return Verdict::Undetermined;
  throw ConfigError("unknown verdict '" + std::string(s) + "'");
}

Mode mode_from_string(std::string_view s) {
  if (s == "min") return Mode::Minimise;
  if (s == "max") return Mode::Maximise;
  throw ConfigError("unknown mode '" + std::string(s) + "' (expected min or max)");
}

}  // namespace broccoli
