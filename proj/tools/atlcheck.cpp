#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "atl/atl.hpp"
#include "atl/bench.hpp"
#include "atl/service.hpp"
#include "atl/ttt.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw atl::atl_error("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw atl::atl_error("cannot write file '" + path + "'");
  out << bytes;
}

// Inline text, or the contents of a file when prefixed with '@'.
std::string resolve_formula_text(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::string text = read_file(arg.substr(1));
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
      text.pop_back();
    return text;
  }
  return arg;
}

atl::pre_backend parse_backend(const std::string& name) {
  if (name == "direct")
    return atl::pre_backend::direct;
  if (name == "relational")
    return atl::pre_backend::relational;
  throw atl::atl_error("unknown backend '" + name + "'");
}

atl::game_structure load_model_file(const std::string& path) {
  try {
    return atl::load_model(read_file(path));
  } catch (const atl::parse_error& e) {
    throw atl::atl_error(path + ": " + e.what());
  } catch (const atl::schema_error& e) {
    throw atl::atl_error(path + ": " + e.what());
  }
}

int run_validate(const std::string& model_path) {
  std::string bytes = read_file(model_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << model_path << ": malformed JSON: " << e.what() << "\n";
    return 2;
  }
  atl::game_description desc;
  try {
    desc = atl::parse_model_document(doc);
  } catch (const atl::schema_error& e) {
    std::cerr << model_path << ": " << e.what() << "\n";
    return 2;
  }
  std::vector<atl::diagnostic> diags = atl::validate(desc);
  if (!diags.empty()) {
    for (const auto& d : diags)
      std::cerr << model_path << ": " << atl::to_string(d.kind) << ": " << d.message << "\n";
    return 2;
  }
  atl::game_structure s = atl::build_game_structure(desc);
  std::cout << "ok: " << s.player_count() << " player(s), " << s.state_count() << " state(s), "
            << s.proposition_count() << " proposition(s)\n";
  return 0;
}

int run_check(const std::string& model_path, const std::string& formula_arg,
              const std::string& backend_name, bool trace, bool allow_unknown_atoms,
              const std::string& output_path) {
  atl::game_structure s = load_model_file(model_path);
  std::string formula_text = resolve_formula_text(formula_arg);
  atl::formula f = atl::parse_formula(formula_text);
  atl::check_options options;
  options.backend = parse_backend(backend_name);
  options.collect_trace = trace;
  options.allow_unknown_atoms = allow_unknown_atoms;
  atl::check_result r = atl::check(s, f, options);
  for (const auto& w : r.warnings)
    std::cerr << "warning: " << w << "\n";
  write_output(output_path, atl::dump_result(r, s, formula_text, options.backend));
  return 0;
}

int run_ttt_play(const std::string& first, const std::string& backend_name) {
  int first_mover = first == "user" ? 2 : 1;
  atl::ttt::play_interactive(std::cin, std::cout, first_mover, {}, parse_backend(backend_name));
  return 0;
}

int run_ttt_synthesize(const std::string& board_str, int turn, int first,
                       const std::string& backend_name) {
  atl::ttt::board b = atl::ttt::parse_board(board_str, turn, first);
  atl::ttt::move_choice choice = atl::ttt::synthesize_move(b, parse_backend(backend_name));
  std::cout << "cell " << choice.cell << " tier " << choice.tier << "\n";
  return 0;
}

int run_bench(const std::string& generator, std::vector<int> plies, int first,
              std::size_t count, std::size_t max_states, std::size_t max_players,
              std::size_t max_moves, std::uint64_t seed, std::vector<std::string> formulas,
              const std::string& backend_name, std::size_t repetitions,
              const std::string& output_path) {
  atl::bench_spec spec;
  if (generator == "ttt") {
    spec.generator = atl::bench_spec::generator_kind::ttt;
    for (int p : plies)
      spec.roots.push_back(atl::ttt::board_at_ply(p, first));
    if (formulas.empty())
      formulas = {"<<1>>~ 111", first == 1 ? "<<2>>@ 222" : "<<2>>~ 222"};
  } else if (generator == "random") {
    spec.generator = atl::bench_spec::generator_kind::random;
    spec.random_count = count;
    spec.random_params.max_states = max_states;
    spec.random_params.max_players = max_players;
    spec.random_params.max_moves = max_moves;
    spec.seed = seed;
  } else {
    throw atl::invalid_generator_spec_error("unknown generator '" + generator + "'");
  }
  spec.formulas = std::move(formulas);
  if (backend_name == "both")
    spec.backends = {atl::pre_backend::direct, atl::pre_backend::relational};
  else
    spec.backends = {parse_backend(backend_name)};
  spec.repetitions = repetitions;
  write_output(output_path, atl::to_csv(atl::run_bench(spec)));
  return 0;
}

int run_serve(const std::string& host, int port, std::size_t max_body) {
  atl::service_options options;
  options.host = host;
  options.port = port;
  options.max_body_bytes = max_body;
  atl::check_service service(options);
  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!service.run()) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ATL model checker over concurrent game structures"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto* validate = app.add_subcommand("validate", "Check a model document for well-formedness");
  {
    auto model = std::make_shared<std::string>();
    validate->add_option("--model", *model, "model JSON file")->required();
    validate->callback([=, &action] { action = [=] { return run_validate(*model); }; });
  }

  auto* check = app.add_subcommand("check", "Evaluate a formula against a model");
  {
    auto model = std::make_shared<std::string>();
    auto formula = std::make_shared<std::string>();
    auto backend = std::make_shared<std::string>("relational");
    auto trace = std::make_shared<bool>(false);
    auto allow_unknown = std::make_shared<bool>(false);
    auto output = std::make_shared<std::string>();
    check->add_option("--model", *model, "model JSON file")->required();
    check->add_option("--formula", *formula, "formula text, or @path to read it from a file")
        ->required();
    check->add_option("--backend", *backend, "Pre backend: direct or relational")
        ->check(CLI::IsMember({"direct", "relational"}))
        ->capture_default_str();
    check->add_flag("--trace", *trace, "include the per-node attribute table in the result");
    check->add_flag("--allow-unknown-atoms", *allow_unknown,
                    "treat undeclared propositions as false with a warning");
    check->add_option("--output", *output, "write the result document here instead of stdout");
    check->callback([=, &action] {
      action = [=] {
        return run_check(*model, *formula, *backend, *trace, *allow_unknown, *output);
      };
    });
  }

  auto* ttt = app.add_subcommand("ttt", "Tic-tac-toe strategy synthesis demo");
  ttt->require_subcommand(1);
  {
    auto* play = ttt->add_subcommand("play", "Play against the synthesized strategy");
    auto first = std::make_shared<std::string>("computer");
    auto backend = std::make_shared<std::string>("relational");
    play->add_option("--first", *first, "who moves first")
        ->check(CLI::IsMember({"user", "computer"}))
        ->capture_default_str();
    play->add_option("--backend", *backend, "Pre backend")
        ->check(CLI::IsMember({"direct", "relational"}))
        ->capture_default_str();
    play->callback([=, &action] { action = [=] { return run_ttt_play(*first, *backend); }; });

    auto* synth = ttt->add_subcommand("synthesize", "Print the computer's move for a position");
    auto board = std::make_shared<std::string>();
    auto turn = std::make_shared<int>(1);
    auto synth_first = std::make_shared<int>(1);
    auto synth_backend = std::make_shared<std::string>("relational");
    synth->add_option("--board", *board, "9 characters of 0/1/2, row-major")->required();
    synth->add_option("--turn", *turn, "player to move: 1 or 2")->required();
    synth->add_option("--first", *synth_first, "who made the first move: 1 or 2")->required();
    synth->add_option("--backend", *synth_backend, "Pre backend")
        ->check(CLI::IsMember({"direct", "relational"}))
        ->capture_default_str();
    synth->callback([=, &action] {
      action = [=] { return run_ttt_synthesize(*board, *turn, *synth_first, *synth_backend); };
    });
  }

  auto* bench = app.add_subcommand("bench", "Time checks over generated structures, as CSV");
  {
    auto generator = std::make_shared<std::string>("ttt");
    auto plies = std::make_shared<std::vector<int>>(std::vector<int>{4, 3, 2, 1, 0});
    auto first = std::make_shared<int>(1);
    auto count = std::make_shared<std::size_t>(5);
    auto max_states = std::make_shared<std::size_t>(6);
    auto max_players = std::make_shared<std::size_t>(3);
    auto max_moves = std::make_shared<std::size_t>(3);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto formulas = std::make_shared<std::vector<std::string>>();
    auto backend = std::make_shared<std::string>("both");
    auto repetitions = std::make_shared<std::size_t>(3);
    auto output = std::make_shared<std::string>();
    bench->add_option("--generator", *generator, "structure source: ttt or random")
        ->check(CLI::IsMember({"ttt", "random"}))
        ->capture_default_str();
    bench->add_option("--plies", *plies, "ttt root boards as prefix-fill ply counts")
        ->capture_default_str();
    bench->add_option("--first", *first, "ttt first mover: 1 or 2")->capture_default_str();
    bench->add_option("--count", *count, "number of random structures")->capture_default_str();
    bench->add_option("--max-states", *max_states, "random size bound")->capture_default_str();
    bench->add_option("--max-players", *max_players, "random size bound")->capture_default_str();
    bench->add_option("--max-moves", *max_moves, "random size bound")->capture_default_str();
    bench->add_option("--seed", *seed, "random generator seed")->capture_default_str();
    bench->add_option("--formula", *formulas,
                      "formula to time (repeatable; ttt defaults to its winning/avoid pair)");
    bench->add_option("--backend", *backend, "direct, relational or both")
        ->check(CLI::IsMember({"direct", "relational", "both"}))
        ->capture_default_str();
    bench->add_option("--repetitions", *repetitions, "runs per timing, median reported")
        ->capture_default_str();
    bench->add_option("--output", *output, "write CSV here instead of stdout");
    bench->callback([=, &action] {
      action = [=] {
        return run_bench(*generator, *plies, *first, *count, *max_states, *max_players,
                         *max_moves, *seed, *formulas, *backend, *repetitions, *output);
      };
    });
  }

  auto* serve = app.add_subcommand("serve", "Serve POST /check and GET /health over HTTP");
  {
    auto host = std::make_shared<std::string>("0.0.0.0");
    auto port = std::make_shared<int>(8080);
    auto max_body = std::make_shared<std::size_t>(64ull << 20);
    serve->add_option("--host", *host, "bind address")->capture_default_str();
    serve->add_option("--port", *port, "listen port")
        ->envname("ATLCHECK_PORT")
        ->capture_default_str();
    serve->add_option("--max-body", *max_body, "request body limit in bytes")
        ->capture_default_str();
    serve->callback([=, &action] { action = [=] { return run_serve(*host, *port, *max_body); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const atl::validation_error& e) {
    for (const auto& d : e.diagnostics())
      std::cerr << atl::to_string(d.kind) << ": " << d.message << "\n";
    return 2;
  } catch (const atl::parse_error& e) {
    std::cerr << "SyntaxError: " << e.what() << "\n";
    return 2;
  } catch (const atl::atl_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
