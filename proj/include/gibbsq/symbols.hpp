#pragma once

#include <span>
#include <vector>

namespace gq {

// Integer-coded symbol sets. The codes double as the total order used by the
// coordinatewise partial order on configurations.
//
//   spins:       {-1,+1}
//   four_state:  {-2,-1,+1,+2}   i.e. (-1~, -1, +1, +1~)
//   three_state: {-1, 0,+1}      i.e. (-1~,  0, +1~)
struct Alphabet {
  std::vector<int> symbols;  // strictly increasing

  static Alphabet spins() { return {{-1, +1}}; }
  static Alphabet four_state() { return {{-2, -1, +1, +2}}; }
  static Alphabet three_state() { return {{-1, 0, +1}}; }

  int size() const { return static_cast<int>(symbols.size()); }
  bool contains(int s) const;
  int index_of(int s) const;  // -1 if absent
  int min_symbol() const { return symbols.front(); }
  int max_symbol() const { return symbols.back(); }
};

// A finite configuration window over [0, N).
struct Window {
  Alphabet alphabet;
  std::vector<int> values;

  Window(Alphabet a, std::vector<int> v);
  int length() const { return static_cast<int>(values.size()); }
};

// x ~_n y : agreement on coordinates [0, n).
bool cylinder_match(const Window& x, const Window& y, int n);

// Coordinatewise x_i <= y_i. Requires equal length and alphabet.
bool config_leq(const Window& x, const Window& y);

// Left shift (x_1, ..., x_{N-1}).
Window shift(const Window& x);

}  // namespace gq
