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

#include "rxl/sim_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <optional>
#include <thread>

#include "rxl/fec_rs.hpp"
#include "rxl/switch.hpp"

namespace rxl {

// ----------------------------------------------------------- StreamClassifier

StreamClassifier::StreamClassifier(uint64_t count, std::function<uint32_t(uint64_t)> cqid_of)
    : count_(count), cqid_of_(std::move(cqid_of)), delivered_(count, false) {}

bool StreamClassifier::deliver(uint64_t id) {
  if (id >= count_) return false;
  if (delivered_[id]) {
    ++failures_.duplicate;
    return false;
  }
  delivered_[id] = true;
  ++delivered_unique_;
  if (id < frontier_) {
    // A late delivery of an overtaken id.
    auto it = holes_.find(id);
    if (it != holes_.end()) {
      it->second ? ++failures_.reorder : ++failures_.gap;
      holes_.erase(it);
    }
    return true;
  }
  const uint32_t cq = cqid_of_(id);
  for (auto& [hole, same_cqid] : holes_) {
    if (!same_cqid && cqid_of_(hole) == cq) same_cqid = true;
  }
  for (uint64_t skipped = frontier_; skipped < id; ++skipped) {
    holes_.emplace(skipped, cqid_of_(skipped) == cq);
  }
  frontier_ = id + 1;
  return true;
}

OrderFailures StreamClassifier::finish() {
  if (!finished_) {
    finished_ = true;
    failures_.gap += holes_.size();
    holes_.clear();
    failures_.gap += count_ - frontier_;
  }
  return failures_;
}

StreamFailures classify_stream(const std::vector<StreamItem>& oracle,
                               const std::vector<StreamItem>& observed) {
  StreamFailures out;
  // Oracle ids need not be dense; align by position.
  std::map<uint64_t, std::size_t> position;
  for (std::size_t i = 0; i < oracle.size(); ++i) position.emplace(oracle[i].id, i);
  StreamClassifier classifier(oracle.size(),
                              [&](uint64_t pos) { return oracle[pos].cqid; });
  for (const StreamItem& item : observed) {
    const auto it = position.find(item.id);
    if (it == position.end()) {
      ++out.fail_data;  // not a transmitted item at all
      continue;
    }
    if (oracle[it->second].digest != item.digest) ++out.fail_data;
    classifier.deliver(it->second);
  }
  out.order = classifier.finish();
  out.delivered_unique = classifier.delivered_unique();
  return out;
}

// ------------------------------------------------------------------ injection

void inject_uncorrectable(WireFlit& wire, SplitMix64& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    const std::size_t j = rng.below(fec::kInterleave);
    const std::size_t data_len = fec::kSubBlockDataBytes[j];
    const std::size_t n = data_len + fec::kParityPerSubBlock;
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n - 1);
    if (b >= a) ++b;
    WireFlit trial = wire;
    for (std::size_t k : {a, b}) {
      const uint8_t mag = static_cast<uint8_t>(1 + rng.below(255));
      const std::size_t off =
          k < data_len ? k * fec::kInterleave + j : kFecOffset + 2 * j + (k - data_len);
      trial[off] ^= mag;
    }
    if (fec::fec_decode_flit(trial).subblocks[j].kind == fec::DecodeKind::kDetectedUncorrectable) {
      wire = trial;
      return;
    }
  }
  throw std::logic_error("inject_uncorrectable: no detectable pattern found");
}

// ------------------------------------------------------------------ simulator

namespace {

constexpr std::size_t kMaxNamedMessages = 256;

uint64_t ceil_slots(double ns, double slot_ns) {
  return static_cast<uint64_t>(std::ceil(ns / slot_ns - 1e-9));
}

struct MessageLayout {
  bool scripted = false;
  uint32_t cqid_count = 1;
  std::vector<uint64_t> first_id;       // per flit, scripted only (size N + 1)
  std::vector<uint32_t> cqid;           // per message, scripted only
  std::vector<std::string> name;        // per message, scripted only

  uint64_t total() const { return scripted ? first_id.back() : first_id_default_; }
  uint64_t first_id_default_ = 0;

  std::pair<uint64_t, uint64_t> range(uint64_t flit) const {
    if (!scripted) return {flit, flit + 1};
    return {first_id[flit], first_id[flit + 1]};
  }
  uint32_t cqid_of(uint64_t id) const {
    return scripted ? cqid[id] : static_cast<uint32_t>(id % cqid_count);
  }
  std::string name_of(uint64_t id) const {
    return scripted ? name[id] : "m" + std::to_string(id);
  }
};

MessageLayout build_layout(const ScenarioConfig& cfg) {
  MessageLayout m;
  m.cqid_count = cfg.cqid_count;
  if (cfg.messages.empty()) {
    m.first_id_default_ = cfg.flit_count;
    return m;
  }
  m.scripted = true;
  m.first_id.reserve(cfg.flit_count + 1);
  for (uint64_t f = 0; f < cfg.flit_count; ++f) {
    m.first_id.push_back(m.cqid.size());
    const auto it = cfg.messages.find(f);
    if (it != cfg.messages.end()) {
      for (const MessageSpec& s : it->second) {
        m.cqid.push_back(s.cqid);
        m.name.push_back(s.name);
      }
    } else {
      m.cqid.push_back(static_cast<uint32_t>(f % cfg.cqid_count));
      m.name.push_back("m" + std::to_string(f));
    }
  }
  m.first_id.push_back(m.cqid.size());
  return m;
}

static_assert(kPayloadBytes % 8 == 0);
static_assert(std::endian::native == std::endian::little,
              "payload streams are defined in little-endian byte order");

Payload make_payload(const SplitMix64& stream, uint64_t index) {
  SplitMix64 r = stream.split(index);
  Payload p{};
  for (std::size_t i = 0; i < p.size(); i += 8) {
    const uint64_t v = r();
    std::memcpy(p.data() + i, &v, sizeof v);  // little-endian byte order
  }
  return p;
}

class Trial {
 public:
  Trial(const ScenarioConfig& cfg, uint64_t trial)
      : cfg_(cfg),
        crc_(cfg.crc_polynomial),
        root_(SplitMix64(cfg.seed).split(trial)),
        payload_stream_(root_.split(1)),
        tx_(cfg.mode, crc_),
        rx_(cfg.mode, cfg.coalesce_k, cfg.standalone_ack, crc_),
        host_acks_(cfg.coalesce_k, cfg.standalone_ack),
        layout_(build_layout(cfg)),
        classifier_(layout_.total(), [this](uint64_t id) { return layout_.cqid_of(id); }),
        flit_delivered_(cfg.flit_count, false) {
    const uint32_t links = cfg.switch_levels + 1;
    for (uint32_t l = 0; l < links; ++l) {
      error_rng_.push_back(root_.split(100 + l));
      link_rng_.push_back(root_.split(200 + l));
    }
    for (uint32_t l = 0; l < cfg.switch_levels; ++l) {
      switch_rng_.push_back(root_.split(300 + l));
      switches_.emplace_back(SwitchConfig{cfg.mode, cfg.internal_error_prob, cfg.switch_crc}, crc_);
    }
    for (const ForcedEvent& ev : cfg.forced) {
      auto& f = forced_[ev.flit_index];
      if (ev.kind == ForcedKind::kDrop) f.drop = true;
      if (ev.kind == ForcedKind::kInternalCorrupt) f.internal = true;
      if (ev.kind == ForcedKind::kPiggyback) f.piggyback = ev.ack;
    }
    retry_slots_ = ceil_slots(cfg.retry_latency_ns, cfg.slot_ns);
    timeout_slots_ = std::max<uint64_t>(1, ceil_slots(cfg.timeout_ns(), cfg.slot_ns));
    max_slots_ = cfg.max_slots != 0
                     ? cfg.max_slots
                     : 10000 + cfg.flit_count * 4 * (2 + retry_slots_) + 4 * timeout_slots_;
    record_names_ = layout_.total() <= kMaxNamedMessages;
  }

  SimReport run();

 private:
  struct Forced {
    bool drop = false;
    bool internal = false;
    std::optional<SeqNum> piggyback;
  };

  const Forced* forced(uint64_t index) const {
    const auto it = forced_.find(index);
    return it == forced_.end() ? nullptr : &it->second;
  }

  // Carries one transmission across every hop. Returns true if it reached
  // the destination's link layer.
  bool transmit(const Emitted& e);
  // A retry occupies the channel for the retry latency, during which the
  // replayed flits are sent; a longer replay extends past it.
  void start_retry(const NackResult& nack) {
    if (!nack.scheduled) return;
    ++r_.retries;
    dead_ = retry_slots_ > nack.count ? retry_slots_ - nack.count : 0;
  }
  void on_action(const RxAction& action, const Emitted& e, const Flit& delivered, bool uncorrectable);

  const ScenarioConfig& cfg_;
  Crc64 crc_;
  SplitMix64 root_;
  SplitMix64 payload_stream_;
  Transmitter tx_;
  Receiver rx_;
  AckScheduler host_acks_;  // host-side ACKs for abstract reverse traffic
  MessageLayout layout_;
  StreamClassifier classifier_;
  std::vector<bool> flit_delivered_;
  std::vector<SplitMix64> error_rng_, link_rng_, switch_rng_;
  std::vector<Switch> switches_;
  std::map<uint64_t, Forced> forced_;
  uint64_t retry_slots_ = 0, timeout_slots_ = 0, max_slots_ = 0;
  uint64_t dead_ = 0;
  uint16_t reverse_seq_ = 0;
  bool record_names_ = false;
  SimReport r_;
};

bool Trial::transmit(const Emitted& e) {
  const bool first = !e.retransmission;
  const Forced* f = first ? forced(e.tag) : nullptr;
  const bool errors_on = cfg_.error.ber > 0.0 || (cfg_.error.burst_enabled && cfg_.error.burst_start_prob > 0.0);
  WireFlit wire = fec::fec_encode_flit(core_bytes(e.flit));

  for (uint32_t l = 0; l <= cfg_.switch_levels; ++l) {
    if ((l == 0 && f && f->drop) || link_rng_[l].bernoulli(cfg_.drop_rate)) {
      ++r_.silent_drops;
      return false;
    }
    if (errors_on) wire = corrupt_flit(wire, cfg_.error, error_rng_[l]).wire;
    if (link_rng_[l].bernoulli(cfg_.uc_rate)) inject_uncorrectable(wire, link_rng_[l]);
    if (l == cfg_.switch_levels) break;

    const SwitchResult sr = switches_[l].forward(wire, switch_rng_[l], l == 0 && f && f->internal);
    if (sr.fec_verdict == fec::FlitVerdict::kCorrected) ++r_.fec_corrected;
    if (!sr.internal_mask.none()) ++r_.internal_corruptions;
    if (!sr.forwarded) {
      sr.reason == DropReason::kCrcFail ? ++r_.crc_drops : ++r_.fec_uncorrectable_drops;
      return false;
    }
    wire = sr.wire;
  }

  const fec::FlitDecode dec = fec::fec_decode_flit(wire);
  if (dec.verdict == fec::FlitVerdict::kCorrected) ++r_.fec_corrected;
  if (dec.verdict == fec::FlitVerdict::kDetectedUncorrectable) {
    ++r_.endpoint_uncorrectable;
    on_action(rx_.on_uncorrectable(), e, Flit{}, true);
  } else {
    const Flit received = flit_from_core(dec.core);
    on_action(rx_.accept(received), e, received, false);
  }
  return true;
}

void Trial::on_action(const RxAction& action, const Emitted& e, const Flit& delivered,
                      bool uncorrectable) {
  switch (action.kind) {
    case RxAction::Kind::kForward: {
      ++r_.forwards;
      if (delivered.payload != make_payload(payload_stream_, e.tag)) ++r_.fail_data;
      if (!flit_delivered_[e.tag]) {
        flit_delivered_[e.tag] = true;
        ++r_.flits_delivered;
      }
      const auto [begin, end] = layout_.range(e.tag);
      for (uint64_t id = begin; id < end; ++id) {
        classifier_.deliver(id);
        if (record_names_) r_.delivered_names.push_back(layout_.name_of(id));
      }
      break;
    }
    case RxAction::Kind::kNack: {
      ++r_.nacks;
      if (!uncorrectable) ++r_.crc_nacks;
      start_retry(tx_.on_nack(action.seq));
      break;
    }
    case RxAction::Kind::kDiscardDuplicate:
      ++r_.duplicates_discarded;
      break;
    case RxAction::Kind::kDiscard:
      break;
  }
}

SimReport Trial::run() {
  const uint64_t n = cfg_.flit_count;
  uint64_t next_new = 0;
  uint64_t idle_run = 0;
  while (r_.slots < max_slots_) {
    if (next_new == n && tx_.outstanding() == 0) break;
    ++r_.slots;
    bool arrived = false;

    if (dead_ > 0) {
      --dead_;
    } else {
      std::optional<Emitted> e;
      if (tx_.retry_pending()) {
        e = tx_.next_retransmission();
      } else {
        const bool can_send_new = next_new < n && !tx_.window_full();
        const std::optional<AckDirective> ack = host_acks_.poll(can_send_new);
        if (ack && !ack->piggyback) {
          ++r_.ack_flits;
        } else if (can_send_new) {
          const Forced* f = forced(next_new);
          std::optional<SeqNum> piggy;
          if (ack) piggy = ack->acknum;
          if (f && f->piggyback) piggy = f->piggyback;
          if (piggy) ++r_.piggybacked_acks;
          e = tx_.emit(make_payload(payload_stream_, next_new), piggy, next_new);
          ++next_new;
          if (cfg_.coalesce_k != 0) host_acks_.on_forward(SeqNum(reverse_seq_++));
        } else if (tx_.outstanding() > 0 && ++idle_run >= timeout_slots_) {
          idle_run = 0;
          ++r_.timeouts;
          start_retry(tx_.on_timeout());
        }
      }
      if (e) {
        idle_run = 0;
        ++r_.transmissions;
        if (e->retransmission) ++r_.retransmissions;
        arrived = transmit(*e);
      }
    }

    // Destination ACKs travel on the (abstract, error-free) reverse channel.
    std::optional<AckDirective> ack = rx_.acks().poll(true);
    if (!ack && !arrived) ack = rx_.acks().flush(true);
    if (ack) tx_.on_ack(ack->acknum);
  }

  r_.cutoff_reached = !(next_new == n && tx_.outstanding() == 0);
  r_.flits_sent = n;
  r_.undelivered = n - r_.flits_delivered;
  r_.goodput_flits = r_.flits_delivered;
  r_.fail_order = classifier_.finish();
  r_.channel_busy_ns = static_cast<double>(r_.slots) * cfg_.slot_ns;
  return std::move(r_);
}

void finalize(SimReport& r, const ScenarioConfig& cfg) {
  r.rng_algorithm = std::string(SplitMix64::kAlgorithm);
  r.config = describe(cfg);
  const double ideal = static_cast<double>(r.flits_sent) * cfg.slot_ns;
  r.bw_loss = r.channel_busy_ns > 0.0 ? 1.0 - ideal / r.channel_busy_ns : 0.0;
  if (r.bw_loss < 0.0) r.bw_loss = 0.0;
  r.ack_overhead = r.transmissions > 0 ? static_cast<double>(r.ack_flits) /
                                             static_cast<double>(r.flits_sent)
                                       : 0.0;
}

void accumulate(SimReport& into, const SimReport& t) {
  into.flits_sent += t.flits_sent;
  into.transmissions += t.transmissions;
  into.retransmissions += t.retransmissions;
  into.flits_delivered += t.flits_delivered;
  into.forwards += t.forwards;
  into.undelivered += t.undelivered;
  into.fec_corrected += t.fec_corrected;
  into.fec_uncorrectable_drops += t.fec_uncorrectable_drops;
  into.crc_drops += t.crc_drops;
  into.endpoint_uncorrectable += t.endpoint_uncorrectable;
  into.silent_drops += t.silent_drops;
  into.crc_nacks += t.crc_nacks;
  into.nacks += t.nacks;
  into.retries += t.retries;
  into.timeouts += t.timeouts;
  into.duplicates_discarded += t.duplicates_discarded;
  into.internal_corruptions += t.internal_corruptions;
  into.ack_flits += t.ack_flits;
  into.piggybacked_acks += t.piggybacked_acks;
  into.fail_data += t.fail_data;
  into.fail_order.gap += t.fail_order.gap;
  into.fail_order.duplicate += t.fail_order.duplicate;
  into.fail_order.reorder += t.fail_order.reorder;
  into.slots += t.slots;
  into.channel_busy_ns += t.channel_busy_ns;
  into.goodput_flits += t.goodput_flits;
  into.cutoff_reached = into.cutoff_reached || t.cutoff_reached;
}

}  // namespace

SimReport run_trial(const ScenarioConfig& cfg, uint64_t trial) {
  cfg.validate();
  SimReport r = Trial(cfg, trial).run();
  finalize(r, cfg);
  return r;
}

SimReport run_scenario(const ScenarioConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<SimReport> results(cfg.trials);
  const unsigned workers =
      static_cast<unsigned>(std::clamp<uint64_t>(threads, 1, cfg.trials));
  if (workers <= 1) {
    for (uint64_t t = 0; t < cfg.trials; ++t) results[t] = Trial(cfg, t).run();
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (uint64_t t = w; t < cfg.trials; t += workers) results[t] = Trial(cfg, t).run();
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }
  SimReport merged;
  merged.delivered_names = results.front().delivered_names;
  for (const SimReport& r : results) accumulate(merged, r);
  finalize(merged, cfg);
  return merged;
}

}  // namespace rxl
