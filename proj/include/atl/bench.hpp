#pragma once

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "atl/engine.hpp"
#include "atl/errors.hpp"
#include "atl/parser.hpp"
#include "atl/random_structure.hpp"
#include "atl/ttt.hpp"

namespace atl {

/// One generator, a formula set, and the backends to time. TTT structures
/// come from the given root boards; random ones from the seeded fuzzer.
struct bench_spec {
  enum class generator_kind { ttt, random };

  generator_kind generator = generator_kind::ttt;
  std::vector<ttt::board> roots;  // ttt generator
  std::size_t random_count = 0;   // random generator
  random_structure_params random_params;
  std::uint64_t seed = 1;

  std::vector<std::string> formulas;
  std::vector<pre_backend> backends = {pre_backend::direct, pre_backend::relational};
  std::size_t repetitions = 3;
};

struct bench_row {
  std::size_t states;
  std::string formula;
  std::string backend;
  double milliseconds;  // wall-clock median over the repetitions
  std::uint64_t iterations;
};

/// Rows in (structure, formula, backend) order; structures keep the spec's
/// root/seed order. Timings come from repeated full checks.
inline std::vector<bench_row> run_bench(const bench_spec& spec) {
  if (spec.repetitions < 1)
    throw invalid_generator_spec_error("repetitions must be at least 1");
  if (spec.formulas.empty())
    throw invalid_generator_spec_error("the formula set is empty");

  std::vector<formula> parsed;
  for (const auto& text : spec.formulas) {
    try {
      parsed.push_back(parse_formula(text));
    } catch (const parse_error& e) {
      throw invalid_generator_spec_error("formula \"" + text + "\": " + e.what());
    }
  }

  std::vector<game_structure> structures;
  switch (spec.generator) {
    case bench_spec::generator_kind::ttt: {
      if (spec.roots.empty())
        throw invalid_generator_spec_error("the ttt generator needs at least one root board");
      for (const auto& root : spec.roots)
        structures.push_back(ttt::generate_structure(root).structure);
      break;
    }
    case bench_spec::generator_kind::random: {
      if (spec.random_count < 1)
        throw invalid_generator_spec_error("the random generator needs a structure count");
      std::mt19937_64 rng(spec.seed);
      for (std::size_t i = 0; i < spec.random_count; ++i)
        structures.push_back(random_structure(rng, spec.random_params));
      break;
    }
  }

  std::vector<bench_row> rows;
  for (const auto& s : structures) {
    for (std::size_t fi = 0; fi < parsed.size(); ++fi) {
      for (pre_backend backend : spec.backends) {
        std::vector<double> times;
        std::uint64_t iterations = 0;
        for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
          check_result r = check(s, parsed[fi], {backend});
          times.push_back(r.stats.wall_ms);
          iterations = r.stats.fixpoint_iterations;
        }
        std::sort(times.begin(), times.end());
        double median = times.size() % 2 ? times[times.size() / 2]
                                         : (times[times.size() / 2 - 1] + times[times.size() / 2]) / 2.0;
        rows.push_back(
            {s.state_count(), spec.formulas[fi], std::string(to_string(backend)), median, iterations});
      }
    }
  }
  return rows;
}

namespace detail {

inline std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos)
    return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"')
      quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace detail

/// Header plus one line per row, milliseconds with three decimals.
inline std::string to_csv(const std::vector<bench_row>& rows) {
  std::string out = "states,formula,backend,milliseconds,iterations\n";
  for (const auto& row : rows) {
    char ms[32];
    std::snprintf(ms, sizeof(ms), "%.3f", row.milliseconds);
    out += std::to_string(row.states) + "," + detail::csv_field(row.formula) + "," + row.backend +
           "," + ms + "," + std::to_string(row.iterations) + "\n";
  }
  return out;
}

}  // namespace atl
