#pragma once

// Game-theoretic ground truth for tic-tac-toe, independent of the ttt
// module: plain minimax over raw cell arrays plus a reachability counter.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace ttt_oracle {

using cells_t = std::array<std::uint8_t, 9>;

inline bool line_of(const cells_t& cells, int player) {
  static const int lines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                  {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
  for (const auto& l : lines)
    if (cells[l[0]] == player && cells[l[1]] == player && cells[l[2]] == player)
      return true;
  return false;
}

inline bool full(const cells_t& cells) {
  for (std::uint8_t c : cells)
    if (c == 0)
      return false;
  return true;
}

inline int encode(const cells_t& cells, int turn) {
  int code = turn - 1;
  for (std::uint8_t c : cells)
    code = code * 3 + c;
  return code;
}

/// +1 if player 1 forces a win, -1 if player 2 does, 0 for a draw, with
/// `turn` to move. Memoized over the base-3 board code.
inline int minimax(const cells_t& cells, int turn) {
  static std::array<std::int8_t, 2 * 19683> memo = [] {
    std::array<std::int8_t, 2 * 19683> m{};
    m.fill(2);  // 2 = unknown
    return m;
  }();
  if (line_of(cells, 1))
    return 1;
  if (line_of(cells, 2))
    return -1;
  if (full(cells))
    return 0;
  int code = encode(cells, turn);
  if (memo[code] != 2)
    return memo[code];
  int best = turn == 1 ? -2 : 2;
  for (int i = 0; i < 9; ++i) {
    if (cells[i] != 0)
      continue;
    cells_t child = cells;
    child[i] = static_cast<std::uint8_t>(turn);
    int v = minimax(child, 3 - turn);
    best = turn == 1 ? std::max(best, v) : std::min(best, v);
  }
  memo[code] = static_cast<std::int8_t>(best);
  return best;
}

/// Count of distinct (cells, turn) positions reachable from the given
/// position by alternating legal play, terminals included.
inline std::size_t count_reachable(const cells_t& cells, int turn) {
  std::set<int> seen;
  std::vector<std::pair<cells_t, int>> stack = {{cells, turn}};
  while (!stack.empty()) {
    auto [c, t] = stack.back();
    stack.pop_back();
    if (!seen.insert(encode(c, t)).second)
      continue;
    if (line_of(c, 1) || line_of(c, 2) || full(c))
      continue;
    for (int i = 0; i < 9; ++i) {
      if (c[i] != 0)
        continue;
      cells_t child = c;
      child[i] = static_cast<std::uint8_t>(t);
      stack.push_back({child, 3 - t});
    }
  }
  return seen.size();
}

/// Cells whose move would complete a line for `player`.
inline std::vector<int> immediate_wins(const cells_t& cells, int player) {
  std::vector<int> out;
  for (int i = 0; i < 9; ++i) {
    if (cells[i] != 0)
      continue;
    cells_t child = cells;
    child[i] = static_cast<std::uint8_t>(player);
    if (line_of(child, player))
      out.push_back(i);
  }
  return out;
}

/// All valid positions with the given number of empty cells, as
/// (cells, turn to move) pairs for the given first mover, winners and full
/// boards excluded.
inline std::vector<std::pair<cells_t, int>> open_positions(int empties, int first_mover) {
  std::vector<std::pair<cells_t, int>> out;
  cells_t cells{};
  // odometer over all 3^9 boards
  for (int code = 0; code < 19683; ++code) {
    int rest = code;
    int count1 = 0, count2 = 0, zero = 0;
    for (int i = 0; i < 9; ++i) {
      cells[i] = static_cast<std::uint8_t>(rest % 3);
      rest /= 3;
      count1 += cells[i] == 1;
      count2 += cells[i] == 2;
      zero += cells[i] == 0;
    }
    if (zero != empties)
      continue;
    int second = 3 - first_mover;
    int lead = (first_mover == 1 ? count1 - count2 : count2 - count1);
    if (lead != 0 && lead != 1)
      continue;
    if (line_of(cells, 1) || line_of(cells, 2))
      continue;
    int turn = lead == 0 ? first_mover : second;
    out.push_back({cells, turn});
  }
  return out;
}

}  // namespace ttt_oracle
