#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mvc/errors.hpp"
#include "mvc/gf16.hpp"

namespace mvc {

/// MDS codec parameters: any `symbols_needed` distinct coded symbols of a
/// payload reconstruct it, fewer never do.
struct CodecParams {
  std::uint32_t symbols_needed = 1;  // L: subpacketization
  std::uint32_t index_space = 1;     // distinct evaluation indices available

  void validate() const {
    if (symbols_needed < 1 || symbols_needed > index_space || index_space > 65536)
      throw UnsupportedParams("codec: need 1 <= L <= index_space <= 65536");
  }
};

/// One coded symbol stream: the evaluation of every stripe's polynomial at
/// this share's index.
struct SymbolShare {
  std::uint32_t index = 0;
  std::vector<Gf16> values;  // one element per stripe
};

namespace codec_detail {

// Row-major square matrix over GF(2^16).
struct Matrix {
  std::size_t n = 0;
  std::vector<Gf16> a;
  Matrix() = default;
  explicit Matrix(std::size_t n_) : n(n_), a(n_ * n_) {}
  Gf16& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
  Gf16 at(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

// Gauss-Jordan inverse. Vandermonde matrices over distinct points are
// always invertible; a singular input is a caller bug.
inline Matrix invert(Matrix m) {
  const std::size_t n = m.n;
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) out.at(i, i) = Gf16(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m.at(pivot, col) == Gf16(0)) ++pivot;
    if (pivot == n) throw std::logic_error("gf16 matrix: singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m.at(pivot, j), m.at(col, j));
        std::swap(out.at(pivot, j), out.at(col, j));
      }
    }
    const Gf16 scale = inv(m.at(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      m.at(col, j) = m.at(col, j) * scale;
      out.at(col, j) = out.at(col, j) * scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m.at(r, col) == Gf16(0)) continue;
      const Gf16 f = m.at(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        m.at(r, j) = m.at(r, j) + f * m.at(col, j);
        out.at(r, j) = out.at(r, j) + f * out.at(col, j);
      }
    }
  }
  return out;
}

// Vandermonde rows for the given evaluation points.
inline Matrix vandermonde(std::span<const std::uint32_t> points) {
  Matrix m(points.size());
  for (std::size_t r = 0; r < points.size(); ++r) {
    Gf16 x(static_cast<std::uint16_t>(points[r]));
    Gf16 p(1);
    for (std::size_t c = 0; c < points.size(); ++c) {
      m.at(r, c) = p;
      p = p * x;
    }
  }
  return m;
}

inline Gf16 horner(std::span<const Gf16> coeffs, Gf16 x) {
  Gf16 acc(0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

inline std::vector<Gf16> mat_vec(const Matrix& m, std::span<const Gf16> v) {
  std::vector<Gf16> out(m.n);
  for (std::size_t r = 0; r < m.n; ++r) {
    Gf16 acc(0);
    for (std::size_t c = 0; c < m.n; ++c) acc = acc + m.at(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

// Zero-pad to a whole number of stripes (2*L bytes per stripe) and read
// 16-bit little-endian symbols.
inline std::vector<Gf16> to_symbols(std::span<const std::uint8_t> payload, std::uint32_t L) {
  const std::size_t stripe_bytes = 2u * L;
  const std::size_t padded = (payload.size() + stripe_bytes - 1) / stripe_bytes * stripe_bytes;
  std::vector<Gf16> sym(padded / 2);
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const std::uint16_t lo = 2 * i < payload.size() ? payload[2 * i] : 0;
    const std::uint16_t hi = 2 * i + 1 < payload.size() ? payload[2 * i + 1] : 0;
    sym[i] = Gf16(static_cast<std::uint16_t>(lo | (hi << 8)));
  }
  return sym;
}

}  // namespace codec_detail

/// Systematic MDS encode. Per stripe of L payload symbols, the share at
/// index j carries the evaluation at point j of the unique degree-<L
/// polynomial through the systematic points {(0, s_0) .. (L-1, s_{L-1})};
/// shares at indices 0..L-1 therefore equal the raw symbols.
inline std::vector<SymbolShare> encode(std::span<const std::uint8_t> payload,
                                       const CodecParams& params,
                                       std::span<const std::uint32_t> indices) {
  params.validate();
  const std::uint32_t L = params.symbols_needed;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= params.index_space)
      throw IndexOutOfRange("encode: index " + std::to_string(indices[i]) +
                            " >= index_space " + std::to_string(params.index_space));
    for (std::size_t j = i + 1; j < indices.size(); ++j)
      if (indices[i] == indices[j])
        throw IndexCollision("encode: duplicate index " + std::to_string(indices[i]));
  }

  const auto symbols = codec_detail::to_symbols(payload, L);
  const std::size_t stripes = symbols.size() / L;

  const bool need_poly =
      std::any_of(indices.begin(), indices.end(), [&](std::uint32_t j) { return j >= L; });
  codec_detail::Matrix interp;
  std::vector<std::vector<Gf16>> coeffs(need_poly ? stripes : 0);
  if (need_poly) {
    std::vector<std::uint32_t> sys_points(L);
    for (std::uint32_t j = 0; j < L; ++j) sys_points[j] = j;
    interp = codec_detail::invert(codec_detail::vandermonde(sys_points));
    for (std::size_t t = 0; t < stripes; ++t)
      coeffs[t] = codec_detail::mat_vec(interp, std::span(symbols).subspan(t * L, L));
  }

  std::vector<SymbolShare> shares;
  shares.reserve(indices.size());
  for (std::uint32_t idx : indices) {
    SymbolShare s;
    s.index = idx;
    s.values.resize(stripes);
    for (std::size_t t = 0; t < stripes; ++t) {
      s.values[t] = idx < L ? symbols[t * L + idx]
                            : codec_detail::horner(coeffs[t], Gf16(static_cast<std::uint16_t>(idx)));
    }
    shares.push_back(std::move(s));
  }
  return shares;
}

/// Inverse of encode from any L shares with distinct indices. Returns the
/// padded payload, or nullopt when fewer than L distinct indices are
/// supplied (insufficient shares: information-theoretic failure, not an
/// error state). Which L shares are used does not affect the result; the
/// lowest-indexed L are taken for determinism.
inline std::optional<std::vector<std::uint8_t>> decode(std::span<const SymbolShare> shares,
                                                       const CodecParams& params) {
  params.validate();
  const std::uint32_t L = params.symbols_needed;

  std::vector<const SymbolShare*> distinct;
  distinct.reserve(shares.size());
  for (const auto& s : shares) {
    if (s.index >= params.index_space)
      throw IndexOutOfRange("decode: index " + std::to_string(s.index) +
                            " >= index_space " + std::to_string(params.index_space));
    const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                  [&](const SymbolShare* d) { return d->index == s.index; });
    if (!seen) distinct.push_back(&s);
  }
  if (distinct.size() < L) return std::nullopt;  // InsufficientShares

  std::sort(distinct.begin(), distinct.end(),
            [](const SymbolShare* a, const SymbolShare* b) { return a->index < b->index; });
  distinct.resize(L);

  const std::size_t stripes = distinct.front()->values.size();
  for (const auto* s : distinct)
    if (s->values.size() != stripes)
      throw std::invalid_argument("decode: shares disagree on stripe count");

  std::vector<std::uint32_t> points(L);
  for (std::uint32_t i = 0; i < L; ++i) points[i] = distinct[i]->index;
  const auto interp = codec_detail::invert(codec_detail::vandermonde(points));

  std::vector<std::uint8_t> out(stripes * 2u * L);
  std::vector<Gf16> column(L);
  for (std::size_t t = 0; t < stripes; ++t) {
    for (std::uint32_t i = 0; i < L; ++i) column[i] = distinct[i]->values[t];
    const auto coeffs = codec_detail::mat_vec(interp, column);
    for (std::uint32_t j = 0; j < L; ++j) {
      const Gf16 s = codec_detail::horner(coeffs, Gf16(static_cast<std::uint16_t>(j)));
      out[(t * L + j) * 2] = static_cast<std::uint8_t>(s.value & 0xFF);
      out[(t * L + j) * 2 + 1] = static_cast<std::uint8_t>(s.value >> 8);
    }
  }
  return out;
}

}  // namespace mvc
