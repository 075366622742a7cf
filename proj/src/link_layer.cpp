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

#include "rxl/link_layer.hpp"

#include <string>

namespace rxl {

std::string_view to_string(ProtocolMode mode) {
  return mode == ProtocolMode::kRxl ? "rxl" : "baseline";
}

// ---------------------------------------------------------------- Transmitter

Transmitter::Transmitter(ProtocolMode mode, const Crc64& crc) : mode_(mode), crc_(&crc) {}

Flit Transmitter::build(const Payload& payload, SeqNum seq,
                        std::optional<SeqNum> piggyback_ack) const {
  FlitHeader h;
  if (piggyback_ack) {
    h.fsn = *piggyback_ack;
    h.replay_cmd = ReplayCmd::kAck;
  } else {
    h.fsn = mode_ == ProtocolMode::kRxl ? SeqNum(0) : seq;
    h.replay_cmd = ReplayCmd::kSeq;
  }
  return mode_ == ProtocolMode::kRxl ? encode_flit_isn(h, payload, seq, *crc_)
                                     : encode_flit_baseline(h, payload, *crc_);
}

std::optional<Emitted> Transmitter::emit(const Payload& payload,
                                         std::optional<SeqNum> piggyback_ack, uint64_t tag) {
  if (window_full()) return std::nullopt;
  const SeqNum seq = next_seq_;
  Emitted e{build(payload, seq, piggyback_ack), seq, tag, false};
  replay_.push_back({seq, payload, tag});
  next_seq_ = next_seq_.next();
  return e;
}

std::size_t Transmitter::on_ack(SeqNum acknum) {
  if (replay_.empty()) return 0;
  const std::size_t d = acknum.distance_from(replay_.front().seq);
  if (d >= replay_.size()) return 0;
  const std::size_t released = d + 1;
  replay_.erase(replay_.begin(), replay_.begin() + static_cast<std::ptrdiff_t>(released));
  if (retry_cursor_) {
    // The cursor may now point at a released entry.
    if (replay_.empty()) {
      if (*retry_cursor_ != next_seq_) retry_cursor_ = next_seq_;
    } else if (replay_.front().seq.newer_than(*retry_cursor_)) {
      retry_cursor_ = replay_.front().seq;
    }
    if (*retry_cursor_ == next_seq_) {
      retry_cursor_.reset();
      retry_origin_.reset();
    }
  }
  return released;
}

NackResult Transmitter::schedule_from(SeqNum resume) {
  if (resume == next_seq_) {
    retry_cursor_.reset();
    retry_origin_.reset();
    return {};
  }
  if (replay_.empty() || resume.distance_from(replay_.front().seq) >= replay_.size()) {
    throw ProtocolError("go-back-N resume point " + std::to_string(resume.value()) +
                        " is not in the replay buffer");
  }
  retry_cursor_ = resume;
  retry_origin_ = resume;
  return {true, next_seq_.distance_from(resume)};
}

NackResult Transmitter::on_nack(SeqNum last_valid) {
  const SeqNum resume = last_valid.next();
  if (retry_origin_ && *retry_origin_ == resume) return {};
  on_ack(last_valid);
  return schedule_from(resume);
}

NackResult Transmitter::on_timeout() {
  if (replay_.empty()) return {};
  return schedule_from(replay_.front().seq);
}

Emitted Transmitter::next_retransmission() {
  if (!retry_cursor_) throw ProtocolError("no retransmission pending");
  const SeqNum seq = *retry_cursor_;
  const Entry& entry = replay_[seq.distance_from(replay_.front().seq)];
  Emitted e{build(entry.payload, seq, std::nullopt), seq, entry.tag, true};
  retry_cursor_ = seq.next();
  if (*retry_cursor_ == next_seq_) {
    retry_cursor_.reset();
    retry_origin_.reset();
  }
  return e;
}

// --------------------------------------------------------------- AckScheduler

AckScheduler::AckScheduler(uint32_t coalesce_k, bool standalone)
    : k_(coalesce_k), standalone_(standalone) {}

void AckScheduler::on_forward(SeqNum newest) {
  newest_ = newest;
  has_progress_ = true;
  if (k_ != 0 && ++since_last_ >= k_) {
    since_last_ = 0;
    due_ = true;
  }
}

std::optional<AckDirective> AckScheduler::take(bool reverse_flit_pending) {
  if (!standalone_ && !reverse_flit_pending) return std::nullopt;
  due_ = false;
  has_progress_ = false;
  since_last_ = 0;
  ++acks_emitted_;
  return AckDirective{newest_, !standalone_};
}

std::optional<AckDirective> AckScheduler::poll(bool reverse_flit_pending) {
  if (!due_) return std::nullopt;
  return take(reverse_flit_pending);
}

std::optional<AckDirective> AckScheduler::flush(bool reverse_flit_pending) {
  if (!has_progress_) return std::nullopt;
  return take(reverse_flit_pending);
}

// ------------------------------------------------------------------- Receiver

Receiver::Receiver(ProtocolMode mode, uint32_t coalesce_k, bool standalone_ack, const Crc64& crc)
    : mode_(mode), crc_(&crc), acks_(coalesce_k, standalone_ack) {}

RxAction Receiver::forward(bool validated) {
  const SeqNum s = eseq_;
  eseq_ = eseq_.next();
  if (validated) last_validated_ = s;
  awaiting_retry_ = false;
  acks_.on_forward(last_validated_);
  return RxAction::forward(s, validated);
}

RxAction Receiver::nack_or_discard() {
  if (awaiting_retry_) return RxAction::discard();
  awaiting_retry_ = true;
  eseq_ = last_validated_.next();
  return RxAction::nack(last_validated_);
}

RxAction Receiver::on_uncorrectable() { return nack_or_discard(); }

RxAction Receiver::accept(const Flit& flit) {
  if (mode_ == ProtocolMode::kRxl) {
    if (verify_flit_isn(flit, eseq_, *crc_) == CrcCheck::kPass) return forward(true);
    return nack_or_discard();
  }

  if (verify_flit_baseline(flit, *crc_) == CrcCheck::kFail) return nack_or_discard();
  if (flit.header.replay_cmd != ReplayCmd::kSeq) {
    // FSN holds an AckNum: integrity is checked but sequence identity is not.
    if (awaiting_retry_) return RxAction::discard();
    return forward(false);
  }
  const SeqNum fsn = flit.header.fsn;
  if (fsn == eseq_) return forward(true);
  if (fsn.older_than(eseq_)) {
    if (fsn.newer_than(last_validated_)) last_validated_ = fsn;
    return RxAction::duplicate(fsn);
  }
  return nack_or_discard();
}

}  // namespace rxl
