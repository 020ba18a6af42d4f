#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "atl/engine.hpp"
#include "atl/errors.hpp"
#include "atl/game_structure.hpp"
#include "atl/parser.hpp"

namespace atl::ttt {

class invalid_board_error : public atl_error {
public:
  explicit invalid_board_error(const std::string& what) : atl_error(what) {}
};

class not_computers_turn_error : public atl_error {
public:
  not_computers_turn_error() : atl_error("it is not the computer's turn") {}
};

class game_over_error : public atl_error {
public:
  game_over_error() : atl_error("the game is already over") {}
};

/// Cells hold 0 (empty), 1 (computer) or 2 (user), row-major:
///   0 1 2
///   3 4 5
///   6 7 8
struct board {
  std::array<std::uint8_t, 9> cells{};
  int turn = 1;
  int first_mover = 1;

  bool operator==(const board& other) const {
    return cells == other.cells && turn == other.turn && first_mover == other.first_mover;
  }
};

inline const std::array<std::array<int, 3>, 8>& lines() {
  static const std::array<std::array<int, 3>, 8> all = {{{0, 1, 2},
                                                         {3, 4, 5},
                                                         {6, 7, 8},
                                                         {0, 3, 6},
                                                         {1, 4, 7},
                                                         {2, 5, 8},
                                                         {0, 4, 8},
                                                         {2, 4, 6}}};
  return all;
}

inline bool has_line(const std::array<std::uint8_t, 9>& cells, int player) {
  for (const auto& line : lines())
    if (cells[line[0]] == player && cells[line[1]] == player && cells[line[2]] == player)
      return true;
  return false;
}

inline bool has_line(const board& b, int player) { return has_line(b.cells, player); }

inline int mark_count(const board& b, int player) {
  int n = 0;
  for (std::uint8_t c : b.cells)
    n += c == player;
  return n;
}

inline std::vector<int> empty_cells(const board& b) {
  std::vector<int> out;
  for (int i = 0; i < 9; ++i)
    if (b.cells[i] == 0)
      out.push_back(i);
  return out;
}

inline bool board_full(const board& b) { return empty_cells(b).empty(); }

inline bool is_terminal(const board& b) {
  return has_line(b, 1) || has_line(b, 2) || board_full(b);
}

/// Rejects boards that no legal play sequence can produce.
inline void validate_board(const board& b) {
  for (std::uint8_t c : b.cells)
    if (c > 2)
      throw invalid_board_error("cell values must be 0, 1 or 2");
  if (b.turn != 1 && b.turn != 2)
    throw invalid_board_error("turn must be 1 or 2");
  if (b.first_mover != 1 && b.first_mover != 2)
    throw invalid_board_error("first mover must be 1 or 2");
  const int first = b.first_mover;
  const int second = 3 - first;
  const int lead = mark_count(b, first) - mark_count(b, second);
  if (lead != 0 && lead != 1)
    throw invalid_board_error("mark counts do not fit the declared first mover");
  const int expected_turn = lead == 0 ? first : second;
  if (b.turn != expected_turn)
    throw invalid_board_error("declared turn contradicts the mark counts");
  if (has_line(b, 1) && has_line(b, 2))
    throw invalid_board_error("both players have completed lines");
}

/// Board from a 9-character 0/1/2 string in the row-major cell order.
inline board parse_board(std::string_view cells, int turn, int first_mover) {
  if (cells.size() != 9)
    throw invalid_board_error("board string must have exactly 9 characters");
  board b;
  for (int i = 0; i < 9; ++i) {
    char c = cells[i];
    if (c < '0' || c > '2')
      throw invalid_board_error("board string may contain only 0, 1 and 2");
    b.cells[i] = static_cast<std::uint8_t>(c - '0');
  }
  b.turn = turn;
  b.first_mover = first_mover;
  validate_board(b);
  return b;
}

inline std::string cells_string(const board& b) {
  std::string s(9, '0');
  for (int i = 0; i < 9; ++i)
    s[i] = static_cast<char>('0' + b.cells[i]);
  return s;
}

/// Places the mark of the player to move and flips the turn.
inline board apply_move(const board& b, int cell) {
  if (cell < 0 || cell > 8 || b.cells[cell] != 0)
    throw invalid_board_error("cell " + std::to_string(cell) + " is not playable");
  board next = b;
  next.cells[cell] = static_cast<std::uint8_t>(b.turn);
  next.turn = 3 - b.turn;
  return next;
}

/// Board after the first `plies` moves played at cells 0,1,...,plies-1.
/// Only meaningful while no line forms (plies <= 6).
inline board board_at_ply(int plies, int first_mover = 1) {
  if (plies < 0 || plies > 9)
    throw invalid_board_error("plies must be between 0 and 9");
  board b;
  b.turn = first_mover;
  b.first_mover = first_mover;
  for (int i = 0; i < plies; ++i)
    b = apply_move(b, i);
  if (has_line(b, 1) || has_line(b, 2))
    throw invalid_board_error("prefix fill of " + std::to_string(plies) + " plies creates a line");
  return b;
}

struct generate_options {
  // Adds one value string per line (e.g. "120") to each state's labels,
  // on top of the reduced {111,222,turn1,turn2} set.
  bool full_line_labels = false;
};

/// The game structure plus the board each state stands for.
struct ttt_structure {
  game_structure structure;
  std::vector<board> boards;  // indexed by state id, BFS discovery order
  state_id root = 0;

  std::optional<state_id> find(const board& b) const {
    auto it = index.find(key_of(b));
    if (it == index.end())
      return std::nullopt;
    return it->second;
  }

  static std::string key_of(const board& b) { return cells_string(b) + "t" + std::to_string(b.turn); }

  std::unordered_map<std::string, state_id> index;
};

inline std::string line_string(const std::array<std::uint8_t, 9>& cells,
                               const std::array<int, 3>& line) {
  std::string s(3, '0');
  for (int i = 0; i < 3; ++i)
    s[i] = static_cast<char>('0' + cells[line[i]]);
  return s;
}

/// Builds the turn-based synchronous structure of all boards reachable from
/// `root` by alternating play. The moving player's moves "1".."k" pick the
/// 1st..k-th empty cell in ascending index order, everyone else idles on
/// "0"; states are deduplicated by (cells, turn); terminals self-loop.
inline ttt_structure generate_structure(const board& root, const generate_options& options = {}) {
  validate_board(root);
  if (has_line(root, 1) || has_line(root, 2))
    throw invalid_board_error("the root board already has a winner");

  ttt_structure out;
  std::deque<state_id> queue;
  auto intern = [&](const board& b) {
    auto key = ttt_structure::key_of(b);
    auto it = out.index.find(key);
    if (it != out.index.end())
      return it->second;
    state_id id = static_cast<state_id>(out.boards.size());
    out.boards.push_back(b);
    out.index.emplace(std::move(key), id);
    queue.push_back(id);
    return id;
  };
  intern(root);

  game_description desc;
  desc.players = {"1", "2"};
  desc.propositions = {"111", "222", "turn1", "turn2"};
  std::vector<std::string> line_props;

  while (!queue.empty()) {
    state_id id = queue.front();
    queue.pop_front();
    const board b = out.boards[id];  // copy: intern() reallocates out.boards
    const std::string name = ttt_structure::key_of(b);

    game_description::state_entry entry;
    entry.name = name;
    if (has_line(b, 1))
      entry.labels.push_back("111");
    if (has_line(b, 2))
      entry.labels.push_back("222");
    entry.labels.push_back(b.turn == 1 ? "turn1" : "turn2");
    if (options.full_line_labels)
      for (const auto& line : lines()) {
        std::string s = line_string(b.cells, line);
        entry.labels.push_back(s);
        line_props.push_back(std::move(s));
      }
    desc.states.push_back(std::move(entry));

    if (is_terminal(b)) {
      desc.moves["1"][name] = {"0"};
      desc.moves["2"][name] = {"0"};
      desc.transitions.push_back({name, {"0", "0"}, name});
      continue;
    }
    const std::vector<int> empties = empty_cells(b);
    const std::string idle = "0";
    std::vector<std::string> mover_moves;
    for (std::size_t i = 1; i <= empties.size(); ++i)
      mover_moves.push_back(std::to_string(i));
    desc.moves[std::to_string(b.turn)][name] = mover_moves;
    desc.moves[std::to_string(3 - b.turn)][name] = {idle};
    for (std::size_t i = 0; i < empties.size(); ++i) {
      board child = apply_move(b, empties[i]);
      intern(child);
      std::vector<std::string> vec(2, idle);
      vec[b.turn - 1] = mover_moves[i];
      desc.transitions.push_back({name, std::move(vec), ttt_structure::key_of(child)});
    }
  }

  if (options.full_line_labels) {
    std::sort(line_props.begin(), line_props.end());
    line_props.erase(std::unique(line_props.begin(), line_props.end()), line_props.end());
    for (const auto& p : line_props)
      if (p != "111" && p != "222")  // already in the reduced set
        desc.propositions.push_back(p);
  }
  out.structure = build_game_structure(desc);
  return out;
}

/// States from which the computer can force a win: <<1>>~ 111.
inline state_set winning_set(const ttt_structure& ts,
                             pre_backend backend = pre_backend::relational) {
  return check(ts.structure, parse_formula("<<1>>~ 111"), {backend}).satisfying;
}

/// States the computer must avoid: <<2>>@ 222 when the computer moved
/// first, <<2>>~ 222 when the user did.
inline state_set avoid_set(const ttt_structure& ts, int first_mover,
                           pre_backend backend = pre_backend::relational) {
  const char* text = first_mover == 1 ? "<<2>>@ 222" : "<<2>>~ 222";
  return check(ts.structure, parse_formula(text), {backend}).satisfying;
}

struct move_choice {
  int cell;
  int tier;  // 0 immediate win, 1 winning and safe, 2 safe, 3 anything
};

/// Winning/avoid sets of one structure, reusable across a whole game.
class ttt_strategy {
public:
  explicit ttt_strategy(const board& root, pre_backend backend = pre_backend::relational)
      : ts_(generate_structure(root)),
        winning_(winning_set(ts_, backend)),
        avoid_(avoid_set(ts_, root.first_mover, backend)) {}

  const ttt_structure& structure() const { return ts_; }
  const state_set& winning() const { return winning_; }
  const state_set& avoid() const { return avoid_; }

  /// Best-tier successor, lowest cell index among ties. The board must be
  /// a state of the underlying structure.
  move_choice choose(const board& b) const {
    if (b.turn != 1)
      throw not_computers_turn_error();
    if (is_terminal(b))
      throw game_over_error();
    if (!ts_.find(b))
      throw invalid_board_error("board is not a state of this game");
    const state_set& wins_now = ts_.structure.states_labeled("111");
    move_choice best{-1, 4};
    for (int cell : empty_cells(b)) {
      state_id child = *ts_.find(apply_move(b, cell));
      int tier = 3;
      if (wins_now.contains(child))
        tier = 0;
      else if (winning_.contains(child) && !avoid_.contains(child))
        tier = 1;
      else if (!avoid_.contains(child))
        tier = 2;
      if (tier < best.tier)
        best = {cell, tier};
    }
    return best;
  }

private:
  ttt_structure ts_;
  state_set winning_;
  state_set avoid_;
};

/// One-shot synthesis for a single position.
inline move_choice synthesize_move(const board& b,
                                   pre_backend backend = pre_backend::relational) {
  if (b.turn != 1)
    throw not_computers_turn_error();
  if (is_terminal(b))
    throw game_over_error();
  return ttt_strategy(b, backend).choose(b);
}

struct play_transcript {
  struct ply {
    int player;
    int cell;
  };
  std::vector<ply> plies;
  std::string outcome;  // "computer wins", "user wins", "draw" or "aborted"
};

inline void print_board(std::ostream& out, const board& b) {
  auto glyph = [&](int i) {
    switch (b.cells[i]) {
      case 1:
        return std::string("X");
      case 2:
        return std::string("O");
      default:
        return std::to_string(i);
    }
  };
  for (int row = 0; row < 3; ++row) {
    out << " " << glyph(row * 3) << " | " << glyph(row * 3 + 1) << " | " << glyph(row * 3 + 2)
        << "\n";
    if (row < 2)
      out << "---+---+---\n";
  }
}

/// Text-mode game loop. The computer is X and plays `chooser` (the real
/// strategy when none is given); the user picks cells 0-8 on `in`.
inline play_transcript play_interactive(std::istream& in, std::ostream& out, int first_mover,
                                        std::function<int(const board&)> chooser = {},
                                        pre_backend backend = pre_backend::relational) {
  board b;
  b.turn = first_mover;
  b.first_mover = first_mover;

  std::optional<ttt_strategy> strategy;
  if (!chooser) {
    strategy.emplace(b, backend);
    chooser = [&strategy](const board& pos) { return strategy->choose(pos).cell; };
  }

  play_transcript transcript;
  out << (first_mover == 1 ? "computer (X) moves first\n" : "you (O) move first\n");
  print_board(out, b);
  while (!is_terminal(b)) {
    int cell = -1;
    if (b.turn == 1) {
      cell = chooser(b);
      out << "computer plays cell " << cell << "\n";
    } else {
      for (;;) {
        out << "your move (0-8): ";
        std::string token;
        if (!(in >> token)) {
          transcript.outcome = "aborted";
          out << "no more input; game aborted\n";
          return transcript;
        }
        try {
          std::size_t used = 0;
          int parsed = std::stoi(token, &used);
          if (used == token.size() && parsed >= 0 && parsed <= 8 && b.cells[parsed] == 0) {
            cell = parsed;
            break;
          }
        } catch (const std::exception&) {
        }
        out << "cell must be an empty index between 0 and 8\n";
      }
    }
    transcript.plies.push_back({b.turn, cell});
    b = apply_move(b, cell);
    print_board(out, b);
  }
  if (has_line(b, 1))
    transcript.outcome = "computer wins";
  else if (has_line(b, 2))
    transcript.outcome = "user wins";
  else
    transcript.outcome = "draw";
  out << transcript.outcome << "\n";
  return transcript;
}

}  // namespace atl::ttt
