// Copyright 2026 The homfill Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "homfill/error.hpp"
#include "homfill/presentation.hpp"

namespace homfill {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

struct Cursor {
  int line = 0;
  std::string_view full;  // the whole line, for column arithmetic

  [[noreturn]] void fail(std::string_view at, const std::string& msg) const {
    std::size_t col = 1;
    if (at.data() >= full.data() && at.data() <= full.data() + full.size())
      col = static_cast<std::size_t>(at.data() - full.data()) + 1;
    throw InputError("line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + msg);
  }
};

// Parses a word relative to the line so errors point at the right column.
Word parse_word_at(const Presentation& p, std::string_view text,
                   const Cursor& cur) {
  try {
    return p.parse_word(text);
  } catch (const InputError& e) {
    // Presentation::parse_word reports a column relative to `text`.
    std::string msg = e.what();
    auto pos = msg.rfind("at column ");
    if (pos != std::string::npos) {
      std::size_t rel = std::stoul(msg.substr(pos + 10));
      cur.fail(text.substr(rel - 1), msg.substr(0, pos - 1));
    }
    cur.fail(text, msg);
  }
}

struct LiftDraft {
  std::map<int, Word> forward, backward;
  bool has_forward = false, has_backward = false;
};

// "a -> a b ; b -> b"
std::map<int, Word> parse_images(const Presentation& k, std::string_view body,
                                 const Cursor& cur) {
  std::map<int, Word> out;
  std::size_t i = 0;
  while (i <= body.size()) {
    std::size_t semi = body.find(';', i);
    if (semi == std::string_view::npos) semi = body.size();
    std::string_view clause = trim(body.substr(i, semi - i));
    if (!clause.empty()) {
      auto arrow = clause.find("->");
      if (arrow == std::string_view::npos)
        cur.fail(clause, "expected 'generator -> word'");
      std::string_view lhs = trim(clause.substr(0, arrow));
      auto g = k.find_generator(lhs);
      if (!g) cur.fail(lhs, "unknown generator '" + std::string(lhs) + "'");
      if (out.count(*g))
        cur.fail(lhs, "image of '" + std::string(lhs) + "' given twice");
      Word img = parse_word_at(k, clause.substr(arrow + 2), cur);
      if (free_reduce(img).empty())
        cur.fail(clause, "image of '" + std::string(lhs) + "' is trivial");
      out[*g] = std::move(img);
    }
    i = semi + 1;
  }
  return out;
}

}  // namespace

GroupFile parse_group_file(std::string_view text) {
  GroupFile out;
  std::vector<std::string> gens;
  bool have_gens = false;
  Presentation scratch;  // generators only, for parsing words
  std::vector<Word> relators;
  std::vector<std::pair<std::string, LiftDraft>> lifts;
  auto lift_slot = [&](const std::string& name) -> LiftDraft& {
    for (auto& [n, d] : lifts)
      if (n == name) return d;
    lifts.emplace_back(name, LiftDraft{});
    return lifts.back().second;
  };

  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    Cursor cur{line_no, raw};
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) cur.fail(line, "expected 'key: value'");
    std::string_view key = trim(line.substr(0, colon));
    std::string_view value = line.substr(colon + 1);
    auto key_parts = split_ws(key);
    if (key_parts.empty()) cur.fail(line, "missing key");
    std::string_view head = key_parts[0];

    auto need_gens = [&] {
      if (!have_gens) cur.fail(key, "'generators:' must come first");
    };

    if (head == "generators" && key_parts.size() == 1) {
      if (have_gens) cur.fail(key, "generators declared twice");
      for (auto tok : split_ws(value)) {
        if (tok.find('\'') != std::string_view::npos)
          cur.fail(tok, "generator names may not contain apostrophes");
        gens.emplace_back(tok);
      }
      try {
        scratch = Presentation(gens, {});
      } catch (const InputError& e) {
        cur.fail(value, e.what());
      }
      have_gens = true;
    } else if (head == "relator" && key_parts.size() == 1) {
      need_gens();
      Word r = parse_word_at(scratch, value, cur);
      if (cyclic_reduce(r).empty()) cur.fail(value, "relator is freely trivial");
      relators.push_back(std::move(r));
    } else if (head == "backend" && key_parts.size() == 1) {
      auto toks = split_ws(value);
      if (toks.size() != 1) cur.fail(value, "expected one backend name");
      static const char* kinds[] = {"free", "free_abelian", "direct_table",
                                    "extension"};
      bool ok = false;
      for (const char* k : kinds) ok = ok || toks[0] == k;
      if (!ok) cur.fail(toks[0], "unknown backend '" + std::string(toks[0]) + "'");
      out.backend = std::string(toks[0]);
    } else if (head == "kernel" && key_parts.size() == 1) {
      auto toks = split_ws(value);
      if (toks.size() != 1 || (toks[0] != "free" && toks[0] != "free_abelian" &&
                               toks[0] != "direct_table"))
        cur.fail(value, "kernel must be free, free_abelian or direct_table");
      out.kernel = std::string(toks[0]);
    } else if (head == "define" && key_parts.size() == 2) {
      need_gens();
      auto g = scratch.find_generator(key_parts[1]);
      if (!g) cur.fail(key_parts[1], "unknown generator");
      out.definitions.emplace_back(*g, parse_word_at(scratch, value, cur));
    } else if (head == "perm" && key_parts.size() == 2) {
      need_gens();
      auto g = scratch.find_generator(key_parts[1]);
      if (!g) cur.fail(key_parts[1], "unknown generator");
      std::vector<int> images;
      for (auto tok : split_ws(value)) {
        int v = 0;
        for (char c : tok) {
          if (!std::isdigit(static_cast<unsigned char>(c)))
            cur.fail(tok, "permutation images must be integers");
          v = v * 10 + (c - '0');
        }
        images.push_back(v);
      }
      out.perms.emplace_back(*g, std::move(images));
    } else if (head == "lift" &&
               (key_parts.size() == 2 ||
                (key_parts.size() == 3 && key_parts[2] == "inverse"))) {
      need_gens();
      std::string name(key_parts[1]);
      if (scratch.find_generator(name))
        cur.fail(key_parts[1], "stable letter clashes with a generator");
      LiftDraft& d = lift_slot(name);
      bool inverse = key_parts.size() == 3;
      auto images = parse_images(scratch, value, cur);
      if (static_cast<int>(images.size()) != scratch.rank())
        cur.fail(value, "lift must map every generator");
      if (inverse) {
        if (d.has_backward) cur.fail(key, "inverse lift given twice");
        d.backward = std::move(images);
        d.has_backward = true;
      } else {
        if (d.has_forward) cur.fail(key, "lift given twice");
        d.forward = std::move(images);
        d.has_forward = true;
      }
    } else {
      cur.fail(key, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_gens) throw InputError("missing 'generators:' line");
  if (out.backend.empty()) out.backend = "free";
  if (out.backend == "extension") {
    if (lifts.empty()) throw InputError("extension backend needs at least one lift");
    if (out.kernel.empty()) out.kernel = "free_abelian";
  } else if (!lifts.empty()) {
    throw InputError("lift lines require 'backend: extension'");
  }
  out.presentation = Presentation(gens, relators);
  int idx = 0;
  for (auto& [name, d] : lifts) {
    if (!d.has_forward || !d.has_backward)
      throw InputError("lift " + name + " needs both forward and inverse lines");
    AutLift lift;
    lift.stable_letter = name;
    lift.stable_letter_index = idx++;
    for (auto& [g, w] : d.forward) lift.forward.push_back(w);
    for (auto& [g, w] : d.backward) lift.backward.push_back(w);
    out.lifts.push_back(std::move(lift));
  }
  return out;
}

GroupFile load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open presentation file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_file(ss.str());
}

}  // namespace homfill
