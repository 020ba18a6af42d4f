#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cassert>
#include <cstdint>
#include <vector>

namespace atl {

using state_id = std::uint32_t;

/// Set of states over a fixed universe {0, ..., universe_size-1}.
/// Binary operations require both operands to share the universe size.
class state_set {
public:
  state_set() = default;

  explicit state_set(std::size_t universe_size) : bits_(universe_size) {}

  static state_set empty(std::size_t universe_size) { return state_set(universe_size); }

  static state_set full(std::size_t universe_size) {
    state_set s(universe_size);
    s.bits_.set();
    return s;
  }

  std::size_t universe_size() const { return bits_.size(); }
  std::size_t count() const { return bits_.count(); }
  bool empty_set() const { return bits_.none(); }

  bool contains(state_id q) const {
    assert(q < bits_.size());
    return bits_.test(q);
  }

  void insert(state_id q) {
    assert(q < bits_.size());
    bits_.set(q);
  }

  void erase(state_id q) {
    assert(q < bits_.size());
    bits_.reset(q);
  }

  bool is_subset_of(const state_set& other) const {
    assert(bits_.size() == other.bits_.size());
    return bits_.is_subset_of(other.bits_);
  }

  state_set& operator&=(const state_set& other) {
    assert(bits_.size() == other.bits_.size());
    bits_ &= other.bits_;
    return *this;
  }

  state_set& operator|=(const state_set& other) {
    assert(bits_.size() == other.bits_.size());
    bits_ |= other.bits_;
    return *this;
  }

  state_set& operator-=(const state_set& other) {
    assert(bits_.size() == other.bits_.size());
    bits_ -= other.bits_;
    return *this;
  }

  friend state_set operator&(state_set a, const state_set& b) { return a &= b; }
  friend state_set operator|(state_set a, const state_set& b) { return a |= b; }
  friend state_set operator-(state_set a, const state_set& b) { return a -= b; }

  state_set complement() const {
    state_set s(*this);
    s.bits_.flip();
    return s;
  }

  bool operator==(const state_set& other) const { return bits_ == other.bits_; }
  bool operator!=(const state_set& other) const { return bits_ != other.bits_; }

  /// Members in ascending order.
  std::vector<state_id> to_vector() const {
    std::vector<state_id> out;
    out.reserve(bits_.count());
    for (auto q = bits_.find_first(); q != boost::dynamic_bitset<>::npos; q = bits_.find_next(q))
      out.push_back(static_cast<state_id>(q));
    return out;
  }

private:
  boost::dynamic_bitset<> bits_;
};

}  // namespace atl
