// Copyright 2026 The RXL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "rxl/flit_codec.hpp"
#include "rxl/seq_num.hpp"

namespace rxl {

enum class ProtocolMode : uint8_t { kCxlBaseline, kRxl };

std::string_view to_string(ProtocolMode mode);

// Replay window invariant violated (a NACK asked for an evicted entry).
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::size_t kReplayCapacity = SeqNum::kHalfWindow;  // 512

struct Emitted {
  Flit flit;
  SeqNum seq;         // the flit's true sequence number
  uint64_t tag = 0;   // caller-owned identifier carried through the replay buffer
  bool retransmission = false;
};

struct NackResult {
  bool scheduled = false;   // false when coalesced into a retry already running
  std::size_t count = 0;    // flits scheduled for retransmission
};

// Transmit side: sequence assignment, replay buffer and go-back-N retry.
class Transmitter {
 public:
  explicit Transmitter(ProtocolMode mode, const Crc64& crc = Crc64::ecma182());

  ProtocolMode mode() const { return mode_; }
  SeqNum next_seq() const { return next_seq_; }
  std::size_t outstanding() const { return replay_.size(); }
  bool window_full() const { return replay_.size() >= kReplayCapacity; }
  bool retry_pending() const { return retry_cursor_.has_value(); }

  // New flit. Baseline: a piggybacked ack replaces the flit's own FSN
  // (cmd=1). RXL: the FSN carries the ack or zero and the sequence number
  // travels inside the CRC. Returns nullopt when the window is full.
  std::optional<Emitted> emit(const Payload& payload, std::optional<SeqNum> piggyback_ack,
                              uint64_t tag = 0);

  // Releases every entry up to and including acknum. Stale or
  // out-of-window values are ignored. Returns the number released.
  std::size_t on_ack(SeqNum acknum);

  // Go-back-N from last_valid + 1. Throws ProtocolError if that entry was
  // already released.
  NackResult on_nack(SeqNum last_valid);

  // Replay-timer expiry: go back to the oldest unacknowledged entry.
  NackResult on_timeout();

  // Next retransmission of the running retry. Retransmitted flits never
  // piggyback. Precondition: retry_pending().
  Emitted next_retransmission();

  // Oldest-first view of the replay buffer.
  struct Entry {
    SeqNum seq;
    Payload payload;
    uint64_t tag;
  };
  const std::deque<Entry>& replay_buffer() const { return replay_; }

 private:
  Flit build(const Payload& payload, SeqNum seq, std::optional<SeqNum> piggyback_ack) const;
  NackResult schedule_from(SeqNum resume);

  ProtocolMode mode_;
  const Crc64* crc_;
  SeqNum next_seq_;
  std::deque<Entry> replay_;
  std::optional<SeqNum> retry_cursor_;
  std::optional<SeqNum> retry_origin_;
};

struct AckDirective {
  SeqNum acknum;
  bool piggyback = false;  // false: dedicated ACK flit
};

// Emits one ACK per `coalesce_k` forwarded flits.
class AckScheduler {
 public:
  AckScheduler(uint32_t coalesce_k, bool standalone);

  uint32_t coalesce_k() const { return k_; }
  bool standalone() const { return standalone_; }

  void on_forward(SeqNum newest);

  // Called once per slot. A due ACK piggybacks when a reverse flit is
  // pending; otherwise it becomes a dedicated ACK flit in standalone mode
  // and waits in piggyback mode.
  std::optional<AckDirective> poll(bool reverse_flit_pending);

  // Emits any un-acknowledged progress regardless of the coalescing count.
  std::optional<AckDirective> flush(bool reverse_flit_pending);

  bool ack_due() const { return due_; }
  std::size_t acks_emitted() const { return acks_emitted_; }

 private:
  std::optional<AckDirective> take(bool reverse_flit_pending);

  uint32_t k_;
  bool standalone_;
  uint32_t since_last_ = 0;
  bool due_ = false;
  bool has_progress_ = false;
  SeqNum newest_;
  std::size_t acks_emitted_ = 0;
};

struct RxAction {
  enum class Kind : uint8_t { kForward, kNack, kDiscardDuplicate, kDiscard };
  Kind kind = Kind::kDiscard;
  // kForward: the receiver's belief of the forwarded flit's seq.
  // kNack: last validated seq. kDiscardDuplicate: the duplicate's FSN.
  SeqNum seq;
  bool validated = false;  // kForward only: sequence identity confirmed

  static RxAction forward(SeqNum s, bool validated) { return {Kind::kForward, s, validated}; }
  static RxAction nack(SeqNum last_valid) { return {Kind::kNack, last_valid, false}; }
  static RxAction duplicate(SeqNum s) { return {Kind::kDiscardDuplicate, s, false}; }
  static RxAction discard() { return {}; }
};

// Receive side: sequence tracking and the ACK scheduler.
class Receiver {
 public:
  Receiver(ProtocolMode mode, uint32_t coalesce_k, bool standalone_ack,
           const Crc64& crc = Crc64::ecma182());

  ProtocolMode mode() const { return mode_; }
  SeqNum eseq() const { return eseq_; }
  SeqNum last_validated_seq() const { return last_validated_; }
  bool awaiting_retry() const { return awaiting_retry_; }

  // Precondition: FEC already decoded and not flagged uncorrectable.
  RxAction accept(const Flit& flit);

  // FEC flagged the flit uncorrectable at this endpoint.
  RxAction on_uncorrectable();

  AckScheduler& acks() { return acks_; }
  const AckScheduler& acks() const { return acks_; }

 private:
  RxAction forward(bool validated);
  RxAction nack_or_discard();

  ProtocolMode mode_;
  const Crc64* crc_;
  SeqNum eseq_;
  SeqNum last_validated_ = SeqNum(SeqNum::kMask);  // "-1": nothing validated yet
  bool awaiting_retry_ = false;
  AckScheduler acks_;
};

}  // namespace rxl
