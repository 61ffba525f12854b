#include "gibbsq/transfer.hpp"

#include <cmath>
#include <stdexcept>

namespace gq {

CylinderTable CylinderTable::constant(const Alphabet& a, int depth, double v) {
  if (depth < 0) throw std::invalid_argument("CylinderTable: depth < 0");
  CylinderTable t{a, depth, {}};
  std::size_t n = 1;
  for (int i = 0; i < depth; ++i) n *= a.size();
  t.vals.assign(n, v);
  return t;
}

std::size_t CylinderTable::index(std::span<const int> word) const {
  if (static_cast<int>(word.size()) != depth)
    throw std::invalid_argument("CylinderTable: word length != depth");
  std::size_t idx = 0;
  for (int s : word) {
    const int k = alphabet.index_of(s);
    if (k < 0) throw std::invalid_argument("CylinderTable: bad symbol");
    idx = idx * alphabet.size() + std::size_t(k);
  }
  return idx;
}

void CylinderTable::word_at(std::size_t idx, std::vector<int>& out) const {
  out.resize(depth);
  for (int i = depth - 1; i >= 0; --i) {
    out[i] = alphabet.symbols[idx % alphabet.size()];
    idx /= alphabet.size();
  }
}

CylinderTable transfer_apply(const CylinderTable& f, const CylinderFn& g) {
  if (f.depth < 1) throw std::invalid_argument("transfer_apply: depth < 1");
  CylinderTable out = CylinderTable::constant(f.alphabet, f.depth - 1, 0.0);
  const int m = f.alphabet.size();
  std::vector<int> word(f.depth);
  for (std::size_t wi = 0; wi < out.vals.size(); ++wi) {
    // decode w into word[1..], prepend each symbol a
    std::size_t rest = wi;
    for (int i = f.depth - 1; i >= 1; --i) {
      word[i] = f.alphabet.symbols[rest % m];
      rest /= m;
    }
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
      word[0] = f.alphabet.symbols[k];
      acc += g(word) * f.at(word);
    }
    out.vals[wi] = acc;
  }
  return out;
}

ResidualReport gmeasure_residual(const CylinderFn& g, const Alphabet& a,
                                 const std::vector<std::vector<int>>& windows,
                                 int depth, int usable_len) {
  if (depth < 1 || depth > 6)
    throw std::invalid_argument("gmeasure_residual: depth must be in [1,6]");
  const int chains = static_cast<int>(windows.size());
  if (chains < 20)
    throw std::invalid_argument("gmeasure_residual: need >= 20 windows");

  const int m = a.size();
  std::size_t n_words = 1;
  for (int i = 0; i < depth; ++i) n_words *= m;

  // per-chain mean of (indicator - g-weighted shifted indicator) per word
  std::vector<std::vector<double>> stat(n_words,
                                        std::vector<double>(chains, 0.0));
  std::vector<int> buf;
  for (int c = 0; c < chains; ++c) {
    const auto& x = windows[c];
    if (static_cast<int>(x.size()) < usable_len + depth)
      throw std::invalid_argument("gmeasure_residual: window too short");
    const int positions = usable_len;
    for (int p = 0; p < positions; ++p) {
      // word occupied at p
      std::size_t idx = 0;
      bool ok = true;
      for (int i = 0; i < depth; ++i) {
        const int k = a.index_of(x[p + i]);
        if (k < 0) {
          ok = false;
          break;
        }
        idx = idx * m + std::size_t(k);
      }
      if (!ok) throw std::invalid_argument("gmeasure_residual: bad symbol");
      stat[idx][c] += 1.0;

      // g-weighted side: suffix word at p+1, any leading symbol
      std::size_t idx1 = 0;
      for (int i = 1; i < depth; ++i)
        idx1 = idx1 * m + std::size_t(a.index_of(x[p + i]));
      const std::size_t tail_len = x.size() - std::size_t(p) - 1;
      buf.resize(tail_len + 1);
      std::copy(x.begin() + p + 1, x.end(), buf.begin() + 1);
      std::size_t stride = 1;
      for (int i = 0; i < depth - 1; ++i) stride *= m;
      for (int k = 0; k < m; ++k) {
        buf[0] = a.symbols[k];
        stat[std::size_t(k) * stride + idx1][c] -= g(buf);
      }
    }
    for (std::size_t w = 0; w < n_words; ++w) stat[w][c] /= double(positions);
  }

  ResidualReport rep;
  for (std::size_t w = 0; w < n_words; ++w) {
    double mean = 0.0;
    for (double v : stat[w]) mean += v;
    mean /= chains;
    double var = 0.0;
    for (double v : stat[w]) var += (v - mean) * (v - mean);
    var /= double(chains - 1);
    const double se = std::sqrt(var / chains);
    const double sig = se > 0 ? std::abs(mean) / se : 0.0;
    if (std::abs(mean) > rep.max_abs) rep.max_abs = std::abs(mean);
    if (sig > rep.max_sigmas) {
      rep.max_sigmas = sig;
      rep.argmax_word = w;
    }
  }
  return rep;
}

}  // namespace gq
