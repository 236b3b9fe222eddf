#include "subseq/vocabulary.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace subseq {

namespace {

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::string strip(std::string_view line) {
  std::size_t a = line.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  std::size_t b = line.find_last_not_of(" \t\r\n");
  return std::string(line.substr(a, b - a + 1));
}

// Tokenizes a word line. With no alphabet known, a line containing spaces is
// token-per-symbol, otherwise character-per-symbol.
std::vector<std::string> tokenize(const std::string& line,
                                  const Alphabet* alphabet) {
  const bool spaced = line.find(' ') != std::string::npos ||
                      line.find('\t') != std::string::npos;
  if (spaced || (alphabet && !alphabet->single_char())) return split_ws(line);
  std::vector<std::string> out;
  out.reserve(line.size());
  for (char c : line) out.emplace_back(1, c);
  return out;
}

std::vector<SymbolIndex> index_tokens(const std::vector<std::string>& tokens,
                                      const Alphabet& alphabet,
                                      const std::string& context) {
  std::vector<SymbolIndex> letters;
  letters.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto idx = alphabet.index_of(t);
    if (!idx) throw FormatError("symbol '" + t + "' outside alphabet" + context);
    letters.push_back(*idx);
  }
  return letters;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error("alphabet must have at least one symbol");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) throw Error("alphabet symbol must be non-empty");
    auto [it, fresh] =
        index_.emplace(symbols_[i], static_cast<SymbolIndex>(i));
    if (!fresh) throw Error("duplicate alphabet symbol '" + symbols_[i] + "'");
    if (symbols_[i].size() != 1) single_char_ = false;
  }
}

Alphabet Alphabet::from_chars(std::string_view chars) {
  std::vector<std::string> symbols;
  symbols.reserve(chars.size());
  for (char c : chars) symbols.emplace_back(1, c);
  return Alphabet(std::move(symbols));
}

std::optional<SymbolIndex> Alphabet::index_of(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word::Word(std::vector<SymbolIndex> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw Error("word must be non-empty");
}

Vocabulary::Vocabulary(std::string label, Alphabet alphabet, double prior)
    : label_(std::move(label)), alphabet_(std::move(alphabet)), prior_(prior) {
  if (prior_ < 0.0 || prior_ > 1.0) throw Error("prior must lie in [0,1]");
}

void Vocabulary::insert(Word w) {
  for (SymbolIndex s : w.letters()) {
    if (s >= alphabet_.size())
      throw Error("word letter index outside alphabet");
  }
  const std::size_t n = w.length();
  auto& bucket = by_length_[n];
  if (std::find(bucket.begin(), bucket.end(), w) != bucket.end())
    throw Error("duplicate word in vocabulary '" + label_ + "'");
  order_.emplace_back(n, bucket.size());
  bucket.push_back(std::move(w));
  max_len_ = std::max(max_len_, n);
}

const std::vector<Word>& Vocabulary::by_length(std::size_t n) const {
  static const std::vector<Word> kEmpty;
  auto it = by_length_.find(n);
  return it == by_length_.end() ? kEmpty : it->second;
}

std::vector<std::size_t> Vocabulary::lengths() const {
  std::vector<std::size_t> out;
  out.reserve(by_length_.size());
  for (const auto& [n, words] : by_length_)
    if (!words.empty()) out.push_back(n);
  return out;
}

const Word& Vocabulary::word(std::size_t flat_index) const {
  const auto& [n, slot] = order_.at(flat_index);
  return by_length_.at(n)[slot];
}

bool Vocabulary::contains(const Word& w) const {
  const auto& bucket = by_length(w.length());
  return std::find(bucket.begin(), bucket.end(), w) != bucket.end();
}

bool Vocabulary::operator==(const Vocabulary& other) const {
  if (label_ != other.label_ || !(alphabet_ == other.alphabet_) ||
      prior_ != other.prior_ || size() != other.size())
    return false;
  // Word sets compare as sets, not by insertion order.
  for (const auto& [n, words] : by_length_) {
    auto mine = words;
    auto theirs = other.by_length(n);
    std::sort(mine.begin(), mine.end());
    std::sort(theirs.begin(), theirs.end());
    if (mine != theirs) return false;
  }
  return true;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  auto tokens = tokenize(strip(text), &alphabet);
  if (tokens.empty()) throw FormatError("empty word");
  return Word(index_tokens(tokens, alphabet, ""));
}

ObservedSequence parse_sequence(std::string_view text,
                                const Alphabet& alphabet) {
  auto tokens = tokenize(strip(text), &alphabet);
  return ObservedSequence(index_tokens(tokens, alphabet, ""));
}

namespace {

std::string join_symbols(const std::vector<SymbolIndex>& letters,
                         const Alphabet& alphabet) {
  std::string out;
  const char* sep = alphabet.single_char() ? "" : " ";
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += sep;
    out += alphabet.symbol(letters[i]);
  }
  return out;
}

}  // namespace

std::string format_word(const Word& w, const Alphabet& alphabet) {
  return join_symbols(w.letters(), alphabet);
}

std::string format_sequence(const ObservedSequence& s,
                            const Alphabet& alphabet) {
  return join_symbols(s.letters(), alphabet);
}

Vocabulary load_vocabulary(const std::filesystem::path& path,
                           const std::optional<Alphabet>& declared) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open vocabulary file " + path.string());

  std::optional<Alphabet> header_alphabet;
  std::optional<double> prior;
  std::optional<std::string> label;
  std::vector<std::pair<std::size_t, std::string>> word_lines;  // (lineno, text)

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (lineno == 1 && line.rfind("#alphabet", 0) == 0) {
        auto symbols = split_ws(std::string_view(line).substr(9));
        if (symbols.empty())
          throw FormatError("empty #alphabet header in " + path.string());
        header_alphabet = Alphabet(std::move(symbols));
      } else if (line.rfind("#label", 0) == 0) {
        label = strip(std::string_view(line).substr(6));
      } else if (line.rfind("#prior", 0) == 0) {
        auto text = strip(std::string_view(line).substr(6));
        double value = 0.0;
        auto [p, ec] =
            std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || p != text.data() + text.size())
          throw FormatError("bad #prior value '" + text + "' in " +
                            path.string());
        prior = value;
      }
      continue;  // other # lines are comments
    }
    word_lines.emplace_back(lineno, std::move(line));
  }
  if (word_lines.empty())
    throw FormatError("vocabulary file " + path.string() + " holds no words");

  std::optional<Alphabet> alphabet =
      declared ? declared : header_alphabet;
  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(word_lines.size());
  for (const auto& [no, line] : word_lines)
    tokenized.push_back(tokenize(line, alphabet ? &*alphabet : nullptr));

  if (!alphabet) {
    std::set<std::string> seen;
    for (const auto& tokens : tokenized)
      seen.insert(tokens.begin(), tokens.end());
    alphabet = Alphabet(std::vector<std::string>(seen.begin(), seen.end()));
  }

  Vocabulary v(label.value_or(path.stem().string()), *alphabet,
               prior.value_or(1.0));
  for (std::size_t k = 0; k < tokenized.size(); ++k) {
    if (tokenized[k].empty())
      throw FormatError("malformed line " +
                        std::to_string(word_lines[k].first) + " in " +
                        path.string());
    try {
      v.insert(Word(index_tokens(tokenized[k], *alphabet,
                                 " at line " +
                                     std::to_string(word_lines[k].first))));
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError(std::string(e.what()) + " (line " +
                        std::to_string(word_lines[k].first) + " of " +
                        path.string() + ")");
    }
  }
  return v;
}

void save_vocabulary(const Vocabulary& v, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write vocabulary file " + path.string());
  out << "#alphabet";
  for (const auto& s : v.alphabet().symbols()) out << ' ' << s;
  out << '\n';
  out << "#label " << v.label() << '\n';
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v.prior());
  out << "#prior " << buf << '\n';
  for (std::size_t i = 0; i < v.size(); ++i)
    out << format_word(v.word(i), v.alphabet()) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace subseq
