#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qdim {

using Symbol = std::uint32_t;

/// A finite word u_1...u_k over the level alphabets. Symbols are 1-based:
/// u_j ranges over 1..#I_j. The empty word is the root cylinder.
class Word {
public:
  Word() = default;
  Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
  explicit Word(std::span<const Symbol> symbols) : symbols_(symbols.begin(), symbols.end()) {}

  /// Parses "121" (single-digit alphabets) or "1.2.10" (dot separated).
  static Word parse(std::string_view text);

  std::size_t depth() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }

  /// u* = u_1...u_{k-1}; the parent of the empty word is the empty word.
  Word parent() const;
  Word prefix(std::size_t n) const;
  Word child(Symbol s) const;
  Word concat(const Word& tail) const;
  bool is_prefix_of(const Word& other) const noexcept;

  /// Digits run together when every symbol is < 10, dot separated otherwise;
  /// the empty word prints as "()".
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.symbols_ <=> b.symbols_;
  }

private:
  std::vector<Symbol> symbols_;
};

}  // namespace qdim
