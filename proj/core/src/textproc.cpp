#include "moodlex/textproc.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace moodlex {

std::string to_string(WordRep rep) {
  switch (rep) {
    case WordRep::Token: return "token";
    case WordRep::Lemma: return "lemma";
    case WordRep::LemmaPos: return "lemma_pos";
  }
  return "token";
}

WordRep word_rep_from_string(std::string_view name) {
  if (name == "token") return WordRep::Token;
  if (name == "lemma") return WordRep::Lemma;
  if (name == "lemma_pos" || name == "lemma#pos") return WordRep::LemmaPos;
  throw InputError("unknown word representation '" + std::string(name) + "'");
}

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one UTF-8 codepoint at `i`; malformed bytes come back as kInvalid
// with length 1 and are passed through untouched downstream.
std::pair<char32_t, std::size_t> decode_utf8(std::string_view s, std::size_t i) {
  unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t k) {
    return i + k < s.size() &&
           (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    char32_t cp = ((b0 & 0x1Fu) << 6) |
                  (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
    return {cp, 2};
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    char32_t cp = ((b0 & 0x0Fu) << 12) |
                  ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6) |
                  (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
    return {cp, 3};
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    char32_t cp = ((b0 & 0x07u) << 18) |
                  ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12) |
                  ((static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6) |
                  (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
    return {cp, 4};
  }
  return {kInvalid, 1};
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// ASCII, Latin-1 supplement, Latin Extended-A, Greek and Cyrillic base
// ranges. Anything else passes through unchanged.
char32_t lower_codepoint(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  // Latin Extended-A pairs with parity flips at U+0139 and U+014A.
  if (cp >= 0x0100 && cp <= 0x0137) {
    if (cp == 0x0130) return 'i';  // dotted capital I
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x014A && cp <= 0x0177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x0178) return 0x00FF;
  if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
  return cp;
}

bool is_strippable(char32_t cp) {
  if (cp == kInvalid) return false;
  if (cp < 0x80)
    return std::ispunct(static_cast<int>(cp)) != 0 ||
           std::isspace(static_cast<int>(cp)) != 0;
  switch (cp) {
    case 0x00A0:  // no-break space
    case 0x00A1: case 0x00AB: case 0x00B7: case 0x00BB: case 0x00BF:
      return true;
    default:
      break;
  }
  if (cp >= 0x2000 && cp <= 0x200A) return true;  // typographic spaces
  if (cp >= 0x2010 && cp <= 0x205E) return true;  // general punctuation
  return false;
}

}  // namespace

std::string normalize_surface(std::string_view s) {
  struct Cp {
    char32_t cp;
    std::size_t offset;
    std::size_t length;
  };
  std::vector<Cp> cps;
  for (std::size_t i = 0; i < s.size();) {
    auto [cp, len] = decode_utf8(s, i);
    cps.push_back({cp, i, len});
    i += len;
  }

  std::size_t begin = 0, end = cps.size();
  while (begin < end && is_strippable(cps[begin].cp)) ++begin;
  while (end > begin && is_strippable(cps[end - 1].cp)) --end;

  std::string out;
  out.reserve(s.size());
  for (std::size_t i = begin; i < end; ++i) {
    if (cps[i].cp == kInvalid) {
      out.append(s.substr(cps[i].offset, cps[i].length));
    } else {
      encode_utf8(lower_codepoint(cps[i].cp), out);
    }
  }
  return out;
}

std::optional<std::string> to_term(const AnnotatedToken& tok, WordRep rep) {
  auto non_empty = [](std::string s) -> std::optional<std::string> {
    if (s.empty()) return std::nullopt;
    return s;
  };

  switch (rep) {
    case WordRep::Token:
      return non_empty(normalize_surface(tok.surface));
    case WordRep::Lemma:
      return non_empty(
          normalize_surface(tok.lemma ? *tok.lemma : tok.surface));
    case WordRep::LemmaPos: {
      std::string base = normalize_surface(tok.lemma ? *tok.lemma : tok.surface);
      if (base.empty()) return std::nullopt;
      std::string tag = "X";  // placeholder keeps the term space total
      if (tok.pos && !tok.pos->empty()) {
        tag = *tok.pos;
        std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char c) {
          return static_cast<char>(std::toupper(c));
        });
      }
      return base + "#" + tag;
    }
  }
  return std::nullopt;
}

std::vector<std::string> term_stream(const RawDocument& doc, WordRep rep) {
  std::vector<std::string> terms;
  terms.reserve(doc.tokens.size());
  for (const auto& tok : doc.tokens)
    if (auto term = to_term(tok, rep)) terms.push_back(std::move(*term));
  return terms;
}

Vocabulary::Vocabulary(WordRep rep, long long cutoff,
                       std::vector<std::string> terms,
                       std::vector<long long> frequencies)
    : rep_(rep),
      cutoff_(cutoff),
      terms_(std::move(terms)),
      frequencies_(std::move(frequencies)) {
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], i);
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(const Corpus& corpus, WordRep rep,
                            long long cutoff) {
  if (cutoff < 1) throw InputError("frequency cutoff must be >= 1");

  std::unordered_map<std::string, long long> counts;
  for (const auto& doc : corpus.documents)
    for (auto& term : term_stream(doc, rep)) counts[std::move(term)] += 1;

  std::vector<std::string> terms;
  for (const auto& [term, count] : counts)
    if (count >= cutoff) terms.push_back(term);
  std::sort(terms.begin(), terms.end());  // lexicographic index assignment

  std::vector<long long> freqs;
  freqs.reserve(terms.size());
  for (const auto& term : terms) freqs.push_back(counts.at(term));
  return Vocabulary(rep, cutoff, std::move(terms), std::move(freqs));
}

}  // namespace moodlex
