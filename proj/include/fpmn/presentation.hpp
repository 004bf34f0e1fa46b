// Group presentations and the M/N input file format:
//
//   # comment
//   generators: x y
//   M: x
//   N: y^2, (xy)^3
//
// M and N name finite sets whose normal closures are the two subgroups.

#ifndef FPMN_PRESENTATION_HPP_
#define FPMN_PRESENTATION_HPP_

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "parse.hpp"
#include "words.hpp"

namespace fpmn {

struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;

  /// Rejects an empty alphabet and identity relators.
  void validate() const {
    if (alphabet.empty())
      fail(ErrorKind::input, "presentation", "no generators declared");
    for (const Word& r : relators)
      if (r.is_identity())
        fail(ErrorKind::input, "presentation", "relator reduces to the identity");
  }
};

/// Normal generators of M and N inside the free group on `alphabet`.
struct MNPresentation {
  Alphabet alphabet;
  std::vector<Word> m;
  std::vector<Word> n;

  /// Relators A u B; the presented group is F/MN.
  Presentation presentation() const {
    Presentation p{alphabet, {}};
    for (const Word& w : m)
      p.relators.push_back(w);
    for (const Word& w : n)
      if (std::find(p.relators.begin(), p.relators.end(), w) == p.relators.end())
        p.relators.push_back(w);
    return p;
  }

  void validate() const {
    if (alphabet.empty())
      fail(ErrorKind::input, "presentation", "no generators declared");
    if (m.empty() || n.empty())
      fail(ErrorKind::input, "presentation", "M and N must both be non-empty");
    for (const auto* side : {&m, &n})
      for (const Word& w : *side)
        if (w.is_identity())
          fail(ErrorKind::input, "presentation", "normal generator reduces to the identity");
  }
};

inline MNPresentation parse_presentation(std::string_view text) {
  MNPresentation p;
  bool have_gens = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::string body = impl::trim(line);
    if (body.empty())
      continue;
    auto colon = body.find(':');
    std::string where = "line " + std::to_string(lineno);
    if (colon == std::string::npos)
      fail(ErrorKind::input, "presentation", where + ": expected 'key: value'");
    std::string key = impl::trim(std::string_view(body).substr(0, colon));
    std::string value = impl::trim(std::string_view(body).substr(colon + 1));
    if (key == "generators") {
      if (have_gens)
        fail(ErrorKind::input, "presentation", where + ": generators declared twice");
      for (char& c : value)
        if (c == ',')
          c = ' ';
      std::istringstream names(value);
      std::string name;
      while (names >> name) {
        for (char c : name)
          if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            fail(ErrorKind::input, "presentation", where + ": bad generator name '" + name + "'");
        if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
          fail(ErrorKind::input, "presentation", where + ": bad generator name '" + name + "'");
        p.alphabet.add(name);
      }
      have_gens = true;
    } else if (key == "M" || key == "N") {
      if (!have_gens)
        fail(ErrorKind::input, "presentation", where + ": generators must be declared first");
      auto words = parse_word_list(value, p.alphabet);
      auto& side = key == "M" ? p.m : p.n;
      side.insert(side.end(), words.begin(), words.end());
    } else {
      fail(ErrorKind::input, "presentation", where + ": unknown key '" + key + "'");
    }
  }
  p.validate();
  return p;
}

inline MNPresentation load_presentation(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    fail(ErrorKind::input, "presentation", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_presentation(ss.str());
}

} // namespace fpmn

#endif // FPMN_PRESENTATION_HPP_
