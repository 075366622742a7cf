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
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rxl/scenario.hpp"

namespace rxl {

// One application-visible item: a message, identified by its position in
// the oracle stream.
struct StreamItem {
  uint64_t id = 0;
  uint32_t cqid = 0;
  uint64_t digest = 0;
};

struct OrderFailures {
  std::size_t gap = 0;
  std::size_t duplicate = 0;
  std::size_t reorder = 0;

  std::size_t total() const { return gap + duplicate + reorder; }
  friend bool operator==(const OrderFailures&, const OrderFailures&) = default;
};

struct StreamFailures {
  std::size_t fail_data = 0;
  OrderFailures order;
  std::size_t delivered_unique = 0;

  friend bool operator==(const StreamFailures&, const StreamFailures&) = default;
};

// Online classifier of a delivered stream against the oracle order.
// Ids are 0..count-1 in oracle order.
//  - duplicate: an id delivered again.
//  - an id overtaken by a larger id's first delivery and delivered later is
//    a reorder if some overtaker shares its CQID, else a gap.
//  - an id never delivered is a gap.
class StreamClassifier {
 public:
  StreamClassifier(uint64_t count, std::function<uint32_t(uint64_t)> cqid_of);

  // Returns true for the id's first delivery.
  bool deliver(uint64_t id);
  // Call once after the last delivery.
  OrderFailures finish();

  std::size_t delivered_unique() const { return delivered_unique_; }

 private:
  uint64_t count_;
  std::function<uint32_t(uint64_t)> cqid_of_;
  std::vector<bool> delivered_;
  uint64_t frontier_ = 0;  // one past the largest first-delivered id
  std::map<uint64_t, bool> holes_;  // overtaken, undelivered -> same-CQID overtaker seen
  OrderFailures failures_;
  std::size_t delivered_unique_ = 0;
  bool finished_ = false;
};

// Offline form; digest mismatches against the oracle item count as fail_data.
StreamFailures classify_stream(const std::vector<StreamItem>& oracle,
                               const std::vector<StreamItem>& observed);

struct SimReport {
  std::string rng_algorithm;
  std::vector<std::pair<std::string, std::string>> config;

  uint64_t flits_sent = 0;          // distinct data flits offered
  uint64_t transmissions = 0;       // data flit transmissions incl. retransmissions
  uint64_t retransmissions = 0;
  uint64_t flits_delivered = 0;     // distinct data flits forwarded at least once
  uint64_t forwards = 0;            // all forward actions at the destination
  uint64_t undelivered = 0;         // never forwarded (lost or pending at cutoff)
  uint64_t fec_corrected = 0;       // hops where FEC corrected at least one symbol
  uint64_t fec_uncorrectable_drops = 0;  // switch drops on FEC detection
  uint64_t crc_drops = 0;           // baseline switch drops on link CRC failure
  uint64_t endpoint_uncorrectable = 0;
  uint64_t silent_drops = 0;        // forced or drop_rate losses on a link
  uint64_t crc_nacks = 0;           // destination CRC / ECRC failures
  uint64_t nacks = 0;
  uint64_t retries = 0;             // go-back-N retries started
  uint64_t timeouts = 0;
  uint64_t duplicates_discarded = 0;
  uint64_t internal_corruptions = 0;
  uint64_t ack_flits = 0;           // dedicated forward ACK flits
  uint64_t piggybacked_acks = 0;
  uint64_t fail_data = 0;
  OrderFailures fail_order;
  uint64_t slots = 0;
  double channel_busy_ns = 0.0;
  uint64_t goodput_flits = 0;
  double bw_loss = 0.0;             // 1 - flit_count * slot_ns / channel_busy_ns
  double ack_overhead = 0.0;        // dedicated ACK flits per data flit
  bool cutoff_reached = false;
  std::vector<std::string> delivered_names;  // first trial, scripted scenarios only

  uint64_t fail_order_total() const { return fail_order.total(); }
};

// Deterministic in cfg (including seed). `threads` only changes wall time.
SimReport run_scenario(const ScenarioConfig& cfg, unsigned threads = 1);

// A single isolated world; `trial` selects the derived RNG stream.
SimReport run_trial(const ScenarioConfig& cfg, uint64_t trial);

// Forces one sub-block into a genuine FEC-detected-uncorrectable state by
// injecting a two-symbol error the decoder flags.
void inject_uncorrectable(WireFlit& wire, SplitMix64& rng);

}  // namespace rxl
