#pragma once

#include "pit/core.hpp"

namespace fixtures {

// Three speakers, two output channels: speaker 3 talks twice, speaker 2 twice,
// speaker 1 once. Canonical order: [0,2) [1,3) [4,6) [5,8) [7,9).
inline pit::UtteranceLayout two_channel_meeting() {
  return pit::UtteranceLayout({{0, 2}, {1, 3}, {4, 6}, {5, 8}, {7, 9}}, 9);
}

// Channel placement shown for that meeting: {u1, u4} on one channel, the rest on the other.
inline pit::Assignment two_channel_meeting_placement() { return pit::Assignment({1, 0, 0, 1, 0}, 2); }

}  // namespace fixtures
