// Copyright 2026 The Arena Authors
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


#include "arena/games/render.h"

#include <sstream>

#include "arena/common/seed.h"
#include "arena/games/grid.h"

namespace arena::games {
namespace {

constexpr const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8",
                                    "#f58231", "#911eb4", "#42d4f4",
                                    "#f032e6", "#9a6324"};

char Digit(int index) { return static_cast<char>('0' + index % 10); }

}  // namespace

std::string TeamColor(const std::string& node_id) {
  if (node_id.empty()) return "";
  return kPalette[HashLabel(node_id) % (sizeof(kPalette) / sizeof(*kPalette))];
}

std::vector<std::string> TeamLabels(const SocialTree& tree,
                                    const GameSpec& spec) {
  std::vector<std::string> labels;
  for (const auto& id : spec.agent_ids) {
    auto path = tree.AncestorPath(id);
    labels.push_back(path.empty() ? "" : path.back());
  }
  return labels;
}

std::string FrameGrid::ToText() const {
  std::ostringstream out;
  out << "step " << step << "\n";
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) out << cells[r * width + c];
    out << "\n";
  }
  return out.str();
}

nlohmann::ordered_json FrameGrid::ToJson() const {
  nlohmann::ordered_json j;
  j["step"] = step;
  j["width"] = width;
  j["height"] = height;
  auto rows = nlohmann::ordered_json::array();
  auto color_rows = nlohmann::ordered_json::array();
  for (int r = 0; r < height; ++r) {
    std::string row;
    auto crow = nlohmann::ordered_json::array();
    for (int c = 0; c < width; ++c) {
      row += cells[r * width + c];
      crow.push_back(colors[r * width + c]);
    }
    rows.push_back(row);
    color_rows.push_back(crow);
  }
  j["rows"] = rows;
  j["colors"] = color_rows;
  auto agents_json = nlohmann::ordered_json::array();
  for (const auto& a : agents) {
    agents_json.push_back({{"index", a.index},
                           {"id", a.id},
                           {"team", a.team},
                           {"color", a.color},
                           {"row", a.row},
                           {"col", a.col},
                           {"heading", std::string(1, a.heading)},
                           {"alive", a.alive},
                           {"finished", a.finished}});
  }
  j["agents"] = agents_json;
  return j;
}

FrameGrid RenderTopDown(const Game& game, const GlobalState& state,
                        const std::vector<std::string>& teams) {
  FrameGrid frame;
  frame.step = state.step_index;
  const int n = game.num_agents();
  auto team_of = [&](int i) {
    return i < static_cast<int>(teams.size()) ? teams[i] : std::string();
  };
  const auto* grid = dynamic_cast<const GridPayload*>(state.payload.get());
  if (grid == nullptr) {
    // Non-spatial games: one cell per agent showing its slot.
    frame.width = n;
    frame.height = 1;
    for (int i = 0; i < n; ++i) {
      frame.cells.push_back(std::string{Digit(i), ' '});
      frame.colors.push_back(TeamColor(team_of(i)));
      FrameAgent a;
      a.index = i;
      a.id = game.spec().agent_ids[i];
      a.team = team_of(i);
      a.color = TeamColor(a.team);
      a.row = 0;
      a.col = i;
      a.alive = state.alive[i];
      a.finished = state.finished[i];
      frame.agents.push_back(a);
    }
    return frame;
  }
  const GridWorld& w = grid->world();
  frame.width = w.width;
  frame.height = w.height;
  frame.cells.assign(w.width * w.height, ". ");
  frame.colors.assign(w.width * w.height, "");
  auto set = [&](Cell c, std::string symbol, std::string color) {
    if (!w.InBounds(c)) return;
    frame.cells[c.row * w.width + c.col] = std::move(symbol);
    frame.colors[c.row * w.width + c.col] = std::move(color);
  };
  for (int r = 0; r < w.height; ++r) {
    for (int c = 0; c < w.width; ++c) {
      if (!w.Passable({r, c})) set({r, c}, "##", "");
      else if (r == w.target_row) set({r, c}, "--", "");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (state.Active(i) && w.targets[i].row >= 0 && w.target_row < 0) {
      set(w.targets[i], std::string{'t', Digit(i)}, TeamColor(team_of(i)));
    }
  }
  for (const Cell& t : w.tokens) set(t, "$ ", "");
  for (const Box& b : w.boxes) {
    std::string color;
    for (int i = 0; i < n; ++i) {
      if (b.team == i / std::max(1, n / static_cast<int>(w.boxes.size()))) {
        color = TeamColor(team_of(i));
        break;
      }
    }
    for (int k = 0; k < b.width; ++k) {
      set({b.origin.row, b.origin.col + k},
          std::string{'B', Digit(b.team)}, color);
    }
  }
  for (int i = 0; i < n; ++i) {
    FrameAgent a;
    a.index = i;
    a.id = game.spec().agent_ids[i];
    a.team = team_of(i);
    a.color = TeamColor(a.team);
    a.alive = state.alive[i];
    a.finished = state.finished[i];
    a.heading = HeadingGlyph(w.headings[i]);
    if (state.Active(i)) {
      a.row = w.positions[i].row;
      a.col = w.positions[i].col;
      set(w.positions[i], std::string{Digit(i), a.heading}, a.color);
    }
    frame.agents.push_back(a);
  }
  return frame;
}

}  // namespace arena::games
