#include "gibbsq/symbols.hpp"

#include <algorithm>
#include <stdexcept>

namespace gq {

bool Alphabet::contains(int s) const {
  return std::find(symbols.begin(), symbols.end(), s) != symbols.end();
}

int Alphabet::index_of(int s) const {
  auto it = std::find(symbols.begin(), symbols.end(), s);
  return it == symbols.end() ? -1 : static_cast<int>(it - symbols.begin());
}

Window::Window(Alphabet a, std::vector<int> v)
    : alphabet(std::move(a)), values(std::move(v)) {
  if (alphabet.symbols.empty())
    throw std::invalid_argument("Window: empty alphabet");
  for (std::size_t i = 1; i < alphabet.symbols.size(); ++i)
    if (alphabet.symbols[i - 1] >= alphabet.symbols[i])
      throw std::invalid_argument("Window: alphabet not strictly increasing");
  for (int s : values)
    if (!alphabet.contains(s))
      throw std::invalid_argument("Window: value outside alphabet");
}

bool cylinder_match(const Window& x, const Window& y, int n) {
  if (n < 0 || n > x.length() || n > y.length())
    throw std::invalid_argument("cylinder_match: n exceeds window length");
  for (int i = 0; i < n; ++i)
    if (x.values[i] != y.values[i]) return false;
  return true;
}

bool config_leq(const Window& x, const Window& y) {
  if (x.length() != y.length() || x.alphabet.symbols != y.alphabet.symbols)
    throw std::invalid_argument("config_leq: mismatched shapes");
  for (int i = 0; i < x.length(); ++i)
    if (x.values[i] > y.values[i]) return false;
  return true;
}

Window shift(const Window& x) {
  if (x.length() < 1) throw std::invalid_argument("shift: empty window");
  return Window(x.alphabet,
                std::vector<int>(x.values.begin() + 1, x.values.end()));
}

}  // namespace gq
