#include "rmlearn/env.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "rmlearn/errors.hpp"

namespace rmlearn {
namespace layout {

bool in_bounds(int row, int col) {
  return row >= 0 && row < kRows && col >= 0 && col < kCols;
}

int room_of(int row, int col, bool two_keys_walls) {
  if (!in_bounds(row, col)) return -1;
  if (two_keys_walls && row == 3 && (col == 6 || col == 7 || col == 9 || col == 10)) {
    return -1;
  }
  if (row >= 3 && row <= 7 && col >= 12 && col <= 16) return 0;  // green
  if (row == 5 && col >= 5 && col <= 11) return 1;               // hallway
  if (row >= 3 && row <= 7 && col >= 0 && col <= 4) return 2;    // blue
  if (row >= 0 && row <= 4 && col >= 6 && col <= 10) return 3;   // orange
  return -1;
}

bool main_passable(int r1, int c1, int r2, int c2, bool two_keys_walls) {
  const int a = room_of(r1, c1, two_keys_walls);
  const int b = room_of(r2, c2, two_keys_walls);
  if (a < 0 || b < 0) return false;
  if (std::abs(r1 - r2) + std::abs(c1 - c2) != 1) return false;
  if (a == b) return true;
  auto doorway = [&](int dr, int dc, int er, int ec) {
    return (r1 == dr && c1 == dc && r2 == er && c2 == ec) ||
           (r1 == er && c1 == ec && r2 == dr && c2 == dc);
  };
  return doorway(5, 4, 5, 5) || doorway(5, 11, 5, 12) || doorway(4, 8, 5, 8);
}

}  // namespace layout

std::string domain_name(Domain d) {
  switch (d) {
    case Domain::cookie: return "cookie";
    case Domain::symbol: return "symbol";
    case Domain::two_keys: return "2-keys";
    case Domain::gravity: return "gravity";
  }
  return "?";
}

Domain domain_from_name(const std::string& name) {
  if (name == "cookie") return Domain::cookie;
  if (name == "symbol") return Domain::symbol;
  if (name == "2-keys" || name == "two-keys" || name == "two_keys") return Domain::two_keys;
  if (name == "gravity") return Domain::gravity;
  throw ConfigError("unknown domain '" + name + "'");
}

PropositionAlphabet make_domain_alphabet(Domain d) {
  PropositionAlphabet a;
  switch (d) {
    case Domain::cookie:
      for (const char* n : {"C", "CE", "BP", "R0", "R1", "R2", "R3"}) a.add(n);
      break;
    case Domain::symbol:
      for (const char* n : {"R0", "R1", "R2", "R3", "sym_club", "sym_spade",
                            "sym_diamond", "arrow_left", "arrow_right", "no_arrow",
                            "touched_correct", "touched_wrong"}) {
        a.add(n);
      }
      break;
    case Domain::two_keys:
      for (const char* n : {"R0", "R1", "R2", "R3", "key_here", "carrying_key",
                            "door1_open", "door2_open", "coffee_reached"}) {
        a.add(n);
      }
      break;
    case Domain::gravity:
      for (const char* n : {"CE", "BP"}) a.add(n);
      break;
  }
  return a;
}

std::string Observation::canonical_key() const {
  std::string k = "r" + std::to_string(row) + "c" + std::to_string(col) +
                  "m" + std::to_string(room);
  if (cookie_visible) {
    k += "|ck" + std::to_string(cookie_row) + "," + std::to_string(cookie_col);
  }
  if (ate_cookie) k += "|ate";
  if (pressed_button) k += "|bp";
  if (board_symbol >= 0) {
    k += "|sym" + std::to_string(board_symbol) + "a" + std::to_string(board_arrow);
  }
  if (touched_correct) k += "|tc";
  if (touched_wrong) k += "|tw";
  for (const auto& [kr, kc] : visible_keys) {
    k += "|k" + std::to_string(kr) + "," + std::to_string(kc);
  }
  if (carrying_key) k += "|carry";
  if (doors_open_mask >= 0) k += "|d" + std::to_string(doors_open_mask);
  k += "|L";
  for (int i = 0; i < label.width(); ++i) {
    if (label.test(i)) k += std::to_string(i) + ",";
  }
  return k;
}

GridPomdp::GridPomdp(Domain domain, std::uint64_t seed)
    : domain_(domain),
      alphabet_(make_domain_alphabet(domain)),
      rng_(seed) {
  switch (domain_) {
    case Domain::cookie: episode_cap_ = 5000; break;
    case Domain::symbol: episode_cap_ = 500; break;
    case Domain::two_keys: episode_cap_ = 500; break;
    case Domain::gravity: episode_cap_ = 500; break;
  }
  auto id_of = [&](const std::string& n) { return *alphabet_.id(n); };
  if (domain_ != Domain::gravity) {
    for (int r = 0; r < 4; ++r) prop_room_[r] = id_of("R" + std::to_string(r));
  }
  switch (domain_) {
    case Domain::cookie:
      prop_c_ = id_of("C");
      prop_ce_ = id_of("CE");
      prop_bp_ = id_of("BP");
      break;
    case Domain::gravity:
      prop_ce_ = id_of("CE");
      prop_bp_ = id_of("BP");
      break;
    case Domain::symbol:
      prop_sym_[0] = id_of("sym_club");
      prop_sym_[1] = id_of("sym_spade");
      prop_sym_[2] = id_of("sym_diamond");
      prop_arrow_[0] = id_of("arrow_left");
      prop_arrow_[1] = id_of("arrow_right");
      prop_arrow_[2] = id_of("no_arrow");
      prop_correct_ = id_of("touched_correct");
      prop_wrong_ = id_of("touched_wrong");
      break;
    case Domain::two_keys:
      prop_key_here_ = id_of("key_here");
      prop_carrying_ = id_of("carrying_key");
      prop_door_[0] = id_of("door1_open");
      prop_door_[1] = id_of("door2_open");
      prop_coffee_ = id_of("coffee_reached");
      break;
  }
}

bool GridPomdp::door_open(int which) const {
  if (which == 1) return door1_open_;
  if (which == 2) return door2_open_;
  throw std::out_of_range("door index must be 1 or 2");
}

std::vector<std::pair<int, int>> GridPomdp::keys_on_floor() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& k : keys_) {
    if (k.on_floor) out.emplace_back(k.row, k.col);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Observation GridPomdp::reset() {
  done_ = false;
  episode_step_ = 0;
  carrying_ = false;
  door1_open_ = door2_open_ = false;
  keys_.clear();
  switch (domain_) {
    case Domain::cookie:
      row_ = layout::kStartRow;
      col_ = layout::kStartCol;
      cookie_present_ = false;
      cookie_row_ = cookie_col_ = -1;
      break;
    case Domain::symbol:
      row_ = layout::kStartRow;
      col_ = layout::kStartCol;
      board_symbol_ = static_cast<int>(rng_.below(3));
      board_arrow_ = static_cast<int>(rng_.below(3));
      break;
    case Domain::two_keys: {
      row_ = layout::kStartRow;
      col_ = layout::kStartCol;
      const int placement = static_cast<int>(rng_.below(3));
      auto put = [&](int r, int c) { keys_.push_back({r, c, true}); };
      if (placement == 0) {  // both blue
        put(layout::kKeyRow, layout::kKeyBlueCols[0]);
        put(layout::kKeyRow, layout::kKeyBlueCols[1]);
      } else if (placement == 1) {  // both green
        put(layout::kKeyRow, layout::kKeyGreenCols[0]);
        put(layout::kKeyRow, layout::kKeyGreenCols[1]);
      } else {  // one in each
        put(layout::kKeyRow, layout::kKeyBlueCols[0]);
        put(layout::kKeyRow, layout::kKeyGreenCols[0]);
      }
      break;
    }
    case Domain::gravity:
      row_ = layout::kGravStartRow;
      col_ = layout::kGravStartCol;
      force_on_ = true;
      cookie_present_ = true;
      cookie_row_ = layout::kGravCookieRow;
      cookie_col_ = layout::kGravCookieCol;
      break;
  }
  return observe(false, false, false, false);
}

bool GridPomdp::try_move(int action) {
  int tr = row_, tc = col_;
  switch (action) {
    case kActionUp: tr -= 1; break;
    case kActionDown: tr += 1; break;
    case kActionLeft: tc -= 1; break;
    case kActionRight: tc += 1; break;
    default: throw ConfigError("action out of range: " + std::to_string(action));
  }
  if (domain_ == Domain::gravity) {
    if (tr < 0 || tr >= layout::kGravSize || tc < 0 || tc >= layout::kGravSize) {
      return false;
    }
  } else {
    const bool walls = domain_ == Domain::two_keys;
    if (!layout::main_passable(row_, col_, tr, tc, walls)) return false;
    if (domain_ == Domain::two_keys) {
      const bool at_door1 = tr == layout::kDoor1Row && tc == layout::kDoor1Col;
      const bool at_door2 = tr == layout::kDoor2Row && tc == layout::kDoor2Col;
      if (at_door1 && !door1_open_) {
        if (!carrying_) return false;
        door1_open_ = true;
        carrying_ = false;
      } else if (at_door2 && !door2_open_) {
        if (!carrying_) return false;
        door2_open_ = true;
        carrying_ = false;
      }
    }
  }
  row_ = tr;
  col_ = tc;
  if (domain_ == Domain::two_keys && !carrying_) {
    for (auto& k : keys_) {
      if (k.on_floor && k.row == row_ && k.col == col_) {
        k.on_floor = false;
        carrying_ = true;
        break;
      }
    }
  }
  return true;
}

StepResult GridPomdp::step(int action) {
  if (done_) throw std::logic_error("episode finished; call reset() first");
  if (action < 0 || action >= kNumActions) {
    throw ConfigError("action out of range: " + std::to_string(action));
  }
  int a = action;
  if (rng_.chance(0.05)) a = (a + 1 + static_cast<int>(rng_.below(3))) % kNumActions;
  if (domain_ == Domain::gravity && force_on_ && a == kActionUp && rng_.chance(0.8)) {
    a = kActionDown;
  }

  const bool moved = try_move(a);
  bool ate = false, pressed = false, correct = false, wrong = false;
  double reward = 0.0;

  switch (domain_) {
    case Domain::cookie:
      if (moved && row_ == layout::kButtonRow && col_ == layout::kButtonCol) {
        pressed = true;
        cookie_present_ = true;
        if (rng_.below(2) == 0) {
          cookie_row_ = layout::kCookieGreenRow;
          cookie_col_ = layout::kCookieGreenCol;
        } else {
          cookie_row_ = layout::kCookieBlueRow;
          cookie_col_ = layout::kCookieBlueCol;
        }
      }
      if (moved && cookie_present_ && row_ == cookie_row_ && col_ == cookie_col_) {
        ate = true;
        cookie_present_ = false;
        cookie_row_ = cookie_col_ = -1;
        reward = 1.0;
      }
      break;
    case Domain::gravity:
      if (moved && row_ == layout::kGravButtonRow && col_ == layout::kGravButtonCol) {
        pressed = true;
        force_on_ = !force_on_;
      }
      if (moved && cookie_present_ && row_ == cookie_row_ && col_ == cookie_col_) {
        ate = true;
        cookie_present_ = false;
        reward = 1.0;
        done_ = true;
      }
      break;
    case Domain::symbol:
      if (moved && row_ == layout::kSymbolRow) {
        int suit = -1, in_room = -1;
        for (int i = 0; i < 3; ++i) {
          if (col_ == layout::kSymbolBlueCols[i]) { suit = i; in_room = 2; }
          if (col_ == layout::kSymbolGreenCols[i]) { suit = i; in_room = 0; }
        }
        if (suit >= 0) {
          const bool room_ok = board_arrow_ == 2 ||
                               (board_arrow_ == 0 ? in_room == 2 : in_room == 0);
          correct = suit == board_symbol_ && room_ok;
          wrong = !correct;
          reward = correct ? 1.0 : -1.0;
          done_ = true;
        }
      }
      break;
    case Domain::two_keys:
      if (moved && row_ == layout::kCoffeeRow && col_ == layout::kCoffeeCol) {
        ate = true;  // reused as the coffee event
        reward = 1.0;
        done_ = true;
      }
      break;
  }

  ++episode_step_;
  if (episode_step_ >= episode_cap_) done_ = true;
  return {observe(ate, pressed, correct, wrong), reward, done_};
}

HighLevelObs GridPomdp::make_label(bool ate, bool pressed, bool correct,
                                   bool wrong) const {
  HighLevelObs label(alphabet_.size());
  const bool walls = domain_ == Domain::two_keys;
  const int room = domain_ == Domain::gravity ? -1 : layout::room_of(row_, col_, walls);
  if (room >= 0) label.set(prop_room_[room]);
  switch (domain_) {
    case Domain::cookie:
      if (cookie_present_ &&
          layout::room_of(cookie_row_, cookie_col_) == room) {
        label.set(prop_c_);
      }
      if (ate) label.set(prop_ce_);
      if (pressed) label.set(prop_bp_);
      break;
    case Domain::gravity:
      if (ate) label.set(prop_ce_);
      if (pressed) label.set(prop_bp_);
      break;
    case Domain::symbol:
      if (room == 3) {
        label.set(prop_sym_[board_symbol_]);
        label.set(prop_arrow_[board_arrow_]);
      }
      if (correct) label.set(prop_correct_);
      if (wrong) label.set(prop_wrong_);
      break;
    case Domain::two_keys: {
      bool key_here = false;
      for (const auto& k : keys_) {
        if (k.on_floor && layout::room_of(k.row, k.col, true) == room) key_here = true;
      }
      if (key_here) label.set(prop_key_here_);
      if (carrying_) label.set(prop_carrying_);
      if (room == 3) {
        if (door1_open_) label.set(prop_door_[0]);
        if (door2_open_) label.set(prop_door_[1]);
      }
      if (ate) label.set(prop_coffee_);
      break;
    }
  }
  return label;
}

Observation GridPomdp::observe(bool ate, bool pressed, bool correct,
                               bool wrong) const {
  Observation o;
  o.row = row_;
  o.col = col_;
  const bool walls = domain_ == Domain::two_keys;
  o.room = domain_ == Domain::gravity ? -1 : layout::room_of(row_, col_, walls);
  switch (domain_) {
    case Domain::cookie:
      o.cookie_visible = cookie_present_ &&
                         layout::room_of(cookie_row_, cookie_col_) == o.room;
      if (o.cookie_visible) {
        o.cookie_row = cookie_row_;
        o.cookie_col = cookie_col_;
      }
      o.ate_cookie = ate;
      o.pressed_button = pressed;
      break;
    case Domain::gravity:
      o.cookie_visible = cookie_present_;
      if (o.cookie_visible) {
        o.cookie_row = cookie_row_;
        o.cookie_col = cookie_col_;
      }
      o.ate_cookie = ate;
      o.pressed_button = pressed;
      break;
    case Domain::symbol:
      if (o.room == 3) {
        o.board_symbol = board_symbol_;
        o.board_arrow = board_arrow_;
      }
      o.touched_correct = correct;
      o.touched_wrong = wrong;
      break;
    case Domain::two_keys:
      for (const auto& k : keys_) {
        if (k.on_floor && layout::room_of(k.row, k.col, true) == o.room) {
          o.visible_keys.emplace_back(k.row, k.col);
        }
      }
      std::sort(o.visible_keys.begin(), o.visible_keys.end());
      o.carrying_key = carrying_;
      if (o.room == 3) {
        o.doors_open_mask = (door1_open_ ? 1 : 0) | (door2_open_ ? 2 : 0);
      }
      break;
  }
  o.label = make_label(ate, pressed, correct, wrong);
  return o;
}

}  // namespace rmlearn
