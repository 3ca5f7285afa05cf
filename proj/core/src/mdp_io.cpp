// Copyright 2026 The submdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "submdp/mdp.hpp"

namespace submdp {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error("mdp parse error at line " + std::to_string(line) + ": " + what);
}

int parse_int_field(std::string_view token, std::string_view key, std::size_t line) {
  if (token.substr(0, key.size()) != key) parse_error(line, "expected " + std::string(key));
  token.remove_prefix(key.size());
  int v = 0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || p != token.data() + token.size()) {
    parse_error(line, "bad integer in '" + std::string(key) + "'");
  }
  return v;
}

}  // namespace

void write_mdp(std::ostream& out, const LeveledMdp& mdp) {
  out << "levels " << mdp.num_levels() << '\n';
  out << "actions";
  for (ActionId a = 0; a < mdp.num_action_ids(); ++a) out << ' ' << mdp.action_name(a);
  out << '\n';
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    out << "state " << mdp.state_name(s) << " level=" << mdp.level(s)
        << " acting=" << (mdp.acting(s) ? 1 : 0) << '\n';
  }
  out << "initial " << mdp.state_name(mdp.initial()) << '\n';
  const auto old_precision = out.precision(17);
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    for (std::uint32_t k = 0; k < mdp.num_actions(s); ++k) {
      out << "trans " << mdp.state_name(s) << ' ' << mdp.action_name(mdp.actions(s)[k]) << " ->";
      for (const auto& t : mdp.transition(s, k)) {
        out << ' ' << mdp.state_name(t.state) << ':' << t.prob;
      }
      out << '\n';
    }
  }
  out.precision(old_precision);
}

LeveledMdp read_mdp(std::istream& in) {
  MdpBuilder builder;
  std::unordered_map<std::string, StateId> states;
  std::unordered_map<std::string, ActionId> actions;
  std::optional<std::string> initial_name;
  int declared_levels = -1;
  auto action_id = [&](const std::string& name) {
    auto it = actions.find(name);
    if (it != actions.end()) return it->second;
    const auto id = builder.add_action_name(name);
    actions.emplace(name, id);
    return id;
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw) || kw.front() == '#' || kw.front() == ';') continue;
    if (kw == "levels") {
      if (!(ls >> declared_levels) || declared_levels < 1) parse_error(line_no, "bad level count");
    } else if (kw == "actions") {
      std::string name;
      while (ls >> name) action_id(name);
    } else if (kw == "state") {
      std::string name, level_tok, acting_tok;
      if (!(ls >> name >> level_tok >> acting_tok)) parse_error(line_no, "incomplete state line");
      if (states.contains(name)) parse_error(line_no, "duplicate state '" + name + "'");
      const int level = parse_int_field(level_tok, "level=", line_no);
      const int acting = parse_int_field(acting_tok, "acting=", line_no);
      if (acting != 0 && acting != 1) parse_error(line_no, "acting must be 0 or 1");
      if (level < 1) parse_error(line_no, "level must be >= 1");
      states.emplace(name, builder.add_state(name, level, acting == 1));
    } else if (kw == "initial") {
      std::string name;
      if (!(ls >> name)) parse_error(line_no, "missing initial state");
      initial_name = name;
    } else if (kw == "trans") {
      std::string s_name, a_name, arrow;
      if (!(ls >> s_name >> a_name >> arrow) || arrow != "->") {
        parse_error(line_no, "expected 'trans <s> <a> -> ...'");
      }
      auto sit = states.find(s_name);
      if (sit == states.end()) parse_error(line_no, "unknown state '" + s_name + "'");
      std::vector<Successor> succ;
      std::string target;
      while (ls >> target) {
        const auto colon = target.rfind(':');
        if (colon == std::string::npos) parse_error(line_no, "expected <state>:<prob>");
        auto tit = states.find(target.substr(0, colon));
        if (tit == states.end()) parse_error(line_no, "unknown target '" + target + "'");
        double p = 0.0;
        try {
          std::size_t used = 0;
          const auto ptext = target.substr(colon + 1);
          p = std::stod(ptext, &used);
          if (used != ptext.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          parse_error(line_no, "bad probability in '" + target + "'");
        }
        succ.push_back({tit->second, p});
      }
      try {
        builder.add_transition(sit->second, action_id(a_name), std::move(succ));
      } catch (const Error& e) {
        parse_error(line_no, e.what());
      }
    } else {
      parse_error(line_no, "unknown keyword '" + kw + "'");
    }
  }
  if (initial_name) {
    auto it = states.find(*initial_name);
    if (it == states.end()) throw Error("unknown initial state '" + *initial_name + "'");
    builder.set_initial(it->second);
  }
  auto mdp = std::move(builder).build();
  if (declared_levels >= 0 && static_cast<std::size_t>(declared_levels) != mdp.num_levels()) {
    throw Error("declared levels " + std::to_string(declared_levels) +
                " do not match deepest state level " + std::to_string(mdp.num_levels()));
  }
  return mdp;
}

}  // namespace submdp
