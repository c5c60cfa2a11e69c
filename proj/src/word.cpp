#include "qdim/word.hpp"

#include <algorithm>
#include <charconv>

#include "qdim/error.hpp"

namespace qdim {

Word Word::parse(std::string_view text) {
  std::vector<Symbol> symbols;
  if (text.empty() || text == "()") return Word{};
  const bool dotted = text.find('.') != std::string_view::npos;
  if (!dotted) {
    for (char c : text) {
      if (c < '1' || c > '9') throw InvalidInput("bad symbol in word '" + std::string(text) + "'");
      symbols.push_back(static_cast<Symbol>(c - '0'));
    }
    return Word(std::move(symbols));
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('.', pos), text.size());
    Symbol s = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, s);
    if (ec != std::errc{} || ptr != text.data() + end || s == 0) {
      throw InvalidInput("bad symbol in word '" + std::string(text) + "'");
    }
    symbols.push_back(s);
    pos = end + 1;
  }
  return Word(std::move(symbols));
}

Word Word::parent() const {
  if (symbols_.empty()) return {};
  return Word(std::span<const Symbol>(symbols_).first(symbols_.size() - 1));
}

Word Word::prefix(std::size_t n) const {
  return Word(std::span<const Symbol>(symbols_).first(std::min(n, symbols_.size())));
}

Word Word::child(Symbol s) const {
  auto out = symbols_;
  out.push_back(s);
  return Word(std::move(out));
}

Word Word::concat(const Word& tail) const {
  auto out = symbols_;
  out.insert(out.end(), tail.symbols_.begin(), tail.symbols_.end());
  return Word(std::move(out));
}

bool Word::is_prefix_of(const Word& other) const noexcept {
  return symbols_.size() <= other.symbols_.size() &&
         std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

std::string Word::to_string() const {
  if (symbols_.empty()) return "()";
  const bool small = std::all_of(symbols_.begin(), symbols_.end(), [](Symbol s) { return s < 10; });
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!small && i > 0) out += '.';
    out += std::to_string(symbols_[i]);
  }
  return out;
}

}  // namespace qdim
