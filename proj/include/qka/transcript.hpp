#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qka {

// Protocol stages in their mandatory order. The transcript refuses events
// that would run the protocol out of order (in particular, the K_B ^ M
// announcement must strictly precede the permutation reveal).
enum class Stage : int {
  QuantumSend1 = 0,
  DecoyAnnounce1 = 1,
  DecoyCheck1 = 2,
  BellMeasure = 3,
  QuantumSend2 = 4,
  DecoyAnnounce2 = 5,
  DecoyCheck2 = 6,
  KeyAnnounce = 7,     // Bob announces K_B ^ M
  AttackDecision = 8,  // adversary record, between Step 6 and Step 7
  PermReveal = 9,      // Alice announces the permutation
  Derived = 10,
  Abort = 11,
};

inline const char* stage_tag(Stage s) {
  switch (s) {
    case Stage::QuantumSend1: return "quantum_send_1";
    case Stage::DecoyAnnounce1: return "decoy_announce_1";
    case Stage::DecoyCheck1: return "decoy_check_1";
    case Stage::BellMeasure: return "bell_measure";
    case Stage::QuantumSend2: return "quantum_send_2";
    case Stage::DecoyAnnounce2: return "decoy_announce_2";
    case Stage::DecoyCheck2: return "decoy_check_2";
    case Stage::KeyAnnounce: return "key_announce";
    case Stage::AttackDecision: return "attack";
    case Stage::PermReveal: return "perm_reveal";
    case Stage::Derived: return "derived";
    case Stage::Abort: return "abort";
  }
  return "?";
}

struct TranscriptEvent {
  Stage stage;
  std::vector<std::pair<std::string, std::string>> fields;
};

class Transcript {
 public:
  // Abort may follow either decoy check; everything else is monotone.
  void add(Stage stage,
           std::vector<std::pair<std::string, std::string>> fields) {
    if (stage == Stage::Abort) {
      if (last_stage_ != Stage::DecoyCheck1 &&
          last_stage_ != Stage::DecoyCheck2) {
        throw std::logic_error("abort outside a decoy check");
      }
    } else {
      if (last_stage_.has_value() &&
          static_cast<int>(stage) <= static_cast<int>(*last_stage_)) {
        throw std::logic_error(
            std::string("protocol stage out of order: ") + stage_tag(stage) +
            " after " + stage_tag(*last_stage_));
      }
    }
    last_stage_ = stage;
    events_.push_back({stage, std::move(fields)});
  }

  const std::vector<TranscriptEvent>& events() const { return events_; }

  bool has_stage(Stage s) const {
    for (const auto& e : events_) {
      if (e.stage == s) return true;
    }
    return false;
  }

  // Line-delimited records: one event per line, stage tag then key=value
  // pairs, bit strings rendered as 0/1 text.
  std::string to_text() const {
    std::string out;
    for (const auto& e : events_) {
      out += stage_tag(e.stage);
      for (const auto& [k, v] : e.fields) {
        out += ' ';
        out += k;
        out += '=';
        out += v;
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<TranscriptEvent> events_;
  std::optional<Stage> last_stage_;
};

enum class RunStatus { Agreed, AbortedAtDecoyCheck1, AbortedAtDecoyCheck2 };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Agreed: return "agreed";
    case RunStatus::AbortedAtDecoyCheck1: return "aborted_decoy_check_1";
    case RunStatus::AbortedAtDecoyCheck2: return "aborted_decoy_check_2";
  }
  return "?";
}

// Classical record of one protocol execution. Abort discards all key
// material, so the keys are absent unless status == Agreed.
struct RunOutcome {
  RunStatus status = RunStatus::Agreed;
  std::optional<std::string> alice_final_key;  // '0'/'1' text, length 4n
  std::optional<std::string> bob_final_key;
  Transcript transcript;
};

}  // namespace qka
