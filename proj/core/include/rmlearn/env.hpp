#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rmlearn/alphabet.hpp"
#include "rmlearn/rng.hpp"

namespace rmlearn {

// Four grid worlds on a shared 8x17 map (three 5x5 rooms joined by a 1x7
// hallway), plus a standalone 5x5 room for the gravity task. Rooms:
//   0 green   rows 3..7, cols 12..16
//   1 hallway row 5,     cols 5..11
//   2 blue    rows 3..7, cols 0..4
//   3 orange  rows 0..4, cols 6..10
// Doorways: (5,4)<->(5,5), (5,11)<->(5,12), (4,8)<->(5,8). Everything the
// agent perceives is restricted to its current room.
namespace layout {

inline constexpr int kRows = 8;
inline constexpr int kCols = 17;

inline constexpr int kStartRow = 5, kStartCol = 8;
inline constexpr int kButtonRow = 2, kButtonCol = 8;
inline constexpr int kCookieGreenRow = 5, kCookieGreenCol = 14;
inline constexpr int kCookieBlueRow = 5, kCookieBlueCol = 2;

// symbol task: board in the orange room, one symbol cell per suit and room
inline constexpr int kBoardRow = 2, kBoardCol = 8;
inline constexpr int kSymbolRow = 4;
inline constexpr int kSymbolBlueCols[3] = {1, 2, 3};    // club, spade, diamond
inline constexpr int kSymbolGreenCols[3] = {13, 14, 15};

// two-keys task: the orange room gets four interior wall cells so that its
// upper part is only reachable through (3,8); both door cells sit on the
// single path hallway -> (4,8) -> (3,8) -> coffee.
inline constexpr int kDoor1Row = 4, kDoor1Col = 8;
inline constexpr int kDoor2Row = 3, kDoor2Col = 8;
inline constexpr int kCoffeeRow = 1, kCoffeeCol = 8;
inline constexpr int kKeyBlueCols[2] = {1, 3};   // row 4
inline constexpr int kKeyGreenCols[2] = {13, 15};
inline constexpr int kKeyRow = 4;

// gravity task: separate 5x5 room
inline constexpr int kGravSize = 5;
inline constexpr int kGravButtonRow = 0, kGravButtonCol = 2;
inline constexpr int kGravCookieRow = 4, kGravCookieCol = 2;
inline constexpr int kGravStartRow = 2, kGravStartCol = 2;

bool in_bounds(int row, int col);
// -1 for wall cells. two_keys_walls carves the interior wall cells used by
// the two-keys task out of the orange room.
int room_of(int row, int col, bool two_keys_walls = false);
// true when a single up/down/left/right move between two walkable cells is
// allowed (same room, or one of the three doorways)
bool main_passable(int r1, int c1, int r2, int c2, bool two_keys_walls = false);

}  // namespace layout

enum class Domain { cookie, symbol, two_keys, gravity };

std::string domain_name(Domain d);
Domain domain_from_name(const std::string& name);  // throws ConfigError

// actions, all domains
inline constexpr int kActionUp = 0;
inline constexpr int kActionDown = 1;
inline constexpr int kActionLeft = 2;
inline constexpr int kActionRight = 3;
inline constexpr int kNumActions = 4;

// What the agent sees: its cell plus the masked, room-local features of the
// active domain. canonical_key() serialises every field and is what the
// tabular agent indexes on.
struct Observation {
  int row = 0;
  int col = 0;
  int room = -1;  // -1 in the gravity room

  // cookie / gravity
  bool cookie_visible = false;
  int cookie_row = -1;
  int cookie_col = -1;
  bool ate_cookie = false;
  bool pressed_button = false;

  // symbol (board readable only inside the orange room)
  int board_symbol = -1;  // 0 club, 1 spade, 2 diamond
  int board_arrow = -1;   // 0 left, 1 right, 2 none
  bool touched_correct = false;
  bool touched_wrong = false;

  // two keys
  std::vector<std::pair<int, int>> visible_keys;  // uncarried keys in this room
  bool carrying_key = false;
  int doors_open_mask = -1;  // bit0 door1, bit1 door2; -1 when not in orange

  HighLevelObs label;  // labelling-function output for this observation

  std::string canonical_key() const;
};

struct StepResult {
  Observation obs;
  double reward = 0.0;
  bool done = false;
};

// Slippery tabular POMDP. Each step the intended action is replaced by one
// of the other three with probability 0.05; in the gravity room a resulting
// "up" is additionally redirected to "down" with probability 0.8 while the
// force is active. Moves into walls or across non-doorway room boundaries
// leave the agent in place.
class GridPomdp {
 public:
  GridPomdp(Domain domain, std::uint64_t seed);

  Domain domain() const { return domain_; }
  const PropositionAlphabet& alphabet() const { return alphabet_; }
  int num_actions() const { return kNumActions; }
  long long episode_cap() const { return episode_cap_; }
  long long episode_step() const { return episode_step_; }
  bool episode_done() const { return done_; }

  Observation reset();
  StepResult step(int action);  // throws std::logic_error once done

  // ground-truth peeks for tests and scripted controllers
  std::pair<int, int> agent_cell() const { return {row_, col_}; }
  bool cookie_present() const { return cookie_present_; }
  std::pair<int, int> cookie_cell() const { return {cookie_row_, cookie_col_}; }
  bool gravity_force_on() const { return force_on_; }
  int true_board_symbol() const { return board_symbol_; }
  int true_board_arrow() const { return board_arrow_; }
  bool door_open(int which) const;
  bool agent_carrying_key() const { return carrying_; }
  std::vector<std::pair<int, int>> keys_on_floor() const;

 private:
  Observation observe(bool ate, bool pressed, bool correct, bool wrong) const;
  HighLevelObs make_label(bool ate, bool pressed, bool correct, bool wrong) const;
  bool try_move(int action);

  Domain domain_;
  PropositionAlphabet alphabet_;
  Rng rng_;
  long long episode_cap_ = 0;
  long long episode_step_ = 0;
  bool done_ = true;

  int row_ = 0, col_ = 0;

  // cookie / gravity
  bool cookie_present_ = false;
  int cookie_row_ = -1, cookie_col_ = -1;
  bool force_on_ = true;

  // symbol
  int board_symbol_ = 0;
  int board_arrow_ = 0;

  // two keys
  struct Key {
    int row = 0, col = 0;
    bool on_floor = true;
  };
  std::vector<Key> keys_;
  bool carrying_ = false;
  bool door1_open_ = false;
  bool door2_open_ = false;

  // proposition ids resolved once in the constructor
  int prop_room_[4] = {-1, -1, -1, -1};
  int prop_c_ = -1, prop_ce_ = -1, prop_bp_ = -1;
  int prop_sym_[3] = {-1, -1, -1};
  int prop_arrow_[3] = {-1, -1, -1};
  int prop_correct_ = -1, prop_wrong_ = -1;
  int prop_key_here_ = -1, prop_carrying_ = -1;
  int prop_door_[2] = {-1, -1};
  int prop_coffee_ = -1;
};

PropositionAlphabet make_domain_alphabet(Domain d);

}  // namespace rmlearn
