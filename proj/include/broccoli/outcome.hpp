#pragma once

#include <cstddef>
#include <string_view>

namespace broccoli {

enum class Verdict { Satisfied, Violated, Undetermined };

enum class Mode { Minimise, Maximise };

enum class Comparison { ABetter, BBetter, Equal };

/// Fitness of a policy: the verdict of its (worst) witness trace, the step
/// count that ranks it, and its predicate-node count as the final tie-breaker.
///
/// For Satisfied outcomes `steps` is the step at which the goal fired
/// (Minimise) or the trace length (Maximise). Violated outcomes record the
/// step bound under Minimise and the step of violation under Maximise.
struct Outcome {
  Verdict verdict = Verdict::Violated;
  std::size_t steps = 0;
  std::size_t size = 0;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Satisfied beats Violated, then steps by mode, then smaller size.
Comparison compare_outcomes(const Outcome& a, const Outcome& b, Mode mode);

/// Same order with the size tie-breaker left out.
Comparison compare_fitness(const Outcome& a, const Outcome& b, Mode mode);

std::string_view to_string(Verdict v);
std::string_view to_string(Mode m);
Verdict verdict_from_string(std::string_view s);
Mode mode_from_string(std::string_view s);

}  // namespace broccoli
