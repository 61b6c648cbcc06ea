/**
 * Copyright 2026 The ArchNet Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <chrono>
#include <future>
#include <thread>

#include "oracles.hpp"
#include "tae/data/formats.hpp"
#include "tae/data/synth.hpp"
#include "tae/error.hpp"
#include "tae/io/checkpoint.hpp"
#include "tae/protocol/delay.hpp"
#include "tae/protocol/message.hpp"
#include "tae/protocol/roles.hpp"
#include "wire_scan.hpp"

namespace tae::protocol {
namespace {

using namespace std::chrono_literals;

io::Bytes random_bytes(std::mt19937_64& rng, std::size_t max_len) {
  io::Bytes b(rng() % (max_len + 1));
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return b;
}

template <class T>
T through_wire(const T& v, T (*as)(const Message&)) {
  return as(decode_message(encode_message(to_message(v))));
}

TEST(Message, EveryTypeRoundTrips) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    const PostDataset post{static_cast<std::uint32_t>(rng()), static_cast<std::uint32_t>(rng()), rng(), rng(),
                           random_bytes(rng, 300), random_bytes(rng, 300)};
    EXPECT_EQ(through_wire(post, as_post_dataset), post);
    const TaskAnnounce ann{rng(), rng(), 7, 4, {1, 8, 8}};
    EXPECT_EQ(through_wire(ann, as_task_announce), ann);
    const RequestTask req{rng()};
    EXPECT_EQ(through_wire(req, as_request_task), req);
    const DatasetTransfer tr{rng(), random_bytes(rng, 500)};
    EXPECT_EQ(through_wire(tr, as_dataset_transfer), tr);
    const ModelReturn mr{rng(), u(rng), u(rng), random_bytes(rng, 500)};
    EXPECT_EQ(through_wire(mr, as_model_return), mr);
    const ValidationResult vr{rng(), u(rng) / 100.0, u(rng), u(rng), {u(rng), u(rng), u(rng)}};
    EXPECT_EQ(through_wire(vr, as_validation_result), vr);
    const PaymentAck pay{rng(), rng()};
    EXPECT_EQ(through_wire(pay, as_payment_ack), pay);
    const ErrorReport err{static_cast<ErrorCode>(1 + rng() % 8), rng(), "detail " + std::to_string(trial)};
    EXPECT_EQ(through_wire(err, as_error_report), err);
  }
}

TEST(Message, RawPayloadsRoundTrip) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Message m{static_cast<MessageType>(1 + rng() % 8), random_bytes(rng, 64)};
    const io::Bytes frame = encode_message(m);
    EXPECT_EQ(frame.size(), kFrameHeaderSize + m.payload.size() + kFrameTrailerSize);
    EXPECT_EQ(decode_message(frame), m);
  }
}

TEST(Message, ZeroLengthFrame) {
  const io::Bytes frame = encode_message({MessageType::kPaymentAck, {}});
  ASSERT_EQ(frame.size(), 9u);
  EXPECT_EQ(frame[0] | frame[1] | frame[2] | frame[3], 0);
  EXPECT_EQ(frame[4], 7);
  EXPECT_TRUE(decode_message(frame).payload.empty());
}

TEST(Message, EveryBitFlipIsCaught) {
  const io::Bytes frame = encode_message(to_message(RequestTask{0x1234}));
  for (std::size_t bit = 0; bit < frame.size() * 8; ++bit) {
    io::Bytes m = frame;
    m[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    EXPECT_THROW(decode_message(m), ParseError) << bit;
  }
}

TEST(Message, FramingErrors) {
  const io::Bytes frame = encode_message(to_message(PaymentAck{1, 2}));
  for (std::size_t n = 0; n < frame.size(); ++n) {
    EXPECT_THROW(decode_message(std::span(frame).first(n)), ParseError) << n;
  }
  io::Bytes trailing = frame;
  trailing.push_back(0);
  EXPECT_THROW(decode_message(trailing), ParseError);
  EXPECT_THROW(encode_message({MessageType::kError, io::Bytes(65)}, 64), ProtocolError);
  EXPECT_THROW(decode_message(encode_message({MessageType::kError, io::Bytes(65)}), 64), ParseError);
  io::Bytes unknown = encode_message({MessageType::kError, {}});
  unknown[4] = 9;
  EXPECT_THROW(decode_message(unknown), ParseError);
  // Reading a payload as the wrong type is refused, not misread.
  EXPECT_THROW(as_payment_ack(to_message(RequestTask{1})), ProtocolError);
}

TEST(Task, LinearLifecycle) {
  TaskRecord t(1, 2, 3, 0.0);
  const TaskStatus order[] = {TaskStatus::kAssigned, TaskStatus::kTrained, TaskStatus::kValidated,
                              TaskStatus::kPaid, TaskStatus::kReturned};
  double now = 0.0;
  for (TaskStatus s : order) {
    EXPECT_FALSE(t.terminal());
    t.advance(s, now += 1.0);
    EXPECT_EQ(t.status, s);
    EXPECT_EQ(t.entered[static_cast<std::size_t>(s)], now);
  }
  EXPECT_TRUE(t.terminal());
  EXPECT_THROW(t.fail("late", 9.0), ProtocolError);
}

TEST(Task, NoIllegalTransition) {
  for (int from = 0; from < 7; ++from)
    for (int to = 0; to < 7; ++to) {
      const auto f = static_cast<TaskStatus>(from), g = static_cast<TaskStatus>(to);
      const bool terminal = f == TaskStatus::kReturned || f == TaskStatus::kFailed;
      const bool expected = !terminal && (to == from + 1 || g == TaskStatus::kFailed) && g != TaskStatus::kPosted;
      EXPECT_EQ(legal_transition(f, g), expected) << from << "->" << to;
    }
  TaskRecord t(1, 2, 3, 0.0);
  EXPECT_THROW(t.advance(TaskStatus::kTrained, 1.0), ProtocolError);
  EXPECT_THROW(t.advance(TaskStatus::kPosted, 1.0), ProtocolError);
}

TEST(Task, SingleRequeue) {
  TaskRecord t(1, 2, 3, 0.0);
  EXPECT_THROW(t.requeue(), ProtocolError);
  t.advance(TaskStatus::kAssigned, 1.0);
  EXPECT_TRUE(t.requeue());
  EXPECT_EQ(t.status, TaskStatus::kPosted);
  EXPECT_FALSE(t.entered[1].has_value());
  t.advance(TaskStatus::kAssigned, 2.0);
  EXPECT_FALSE(t.requeue());
  EXPECT_EQ(t.status, TaskStatus::kAssigned);
}

TEST(Task, ServerWaitArithmetic) {
  TaskRecord t(1, 2, 3, 10.0);
  t.advance(TaskStatus::kAssigned, 13.0);
  t.model_received = 20.0;
  t.validation_started = 20.5;
  EXPECT_DOUBLE_EQ(t.server_wait(), 3.5);
}

TEST(Delay, Examples) {
  const DelayBreakdown d = delay_report({1, 1, 1, 1}, 10, 100, 5);
  EXPECT_EQ(d.t2, 1.0);
  EXPECT_EQ(d.t0, 119.0);
  EXPECT_EQ(delay_report({0, 0, 0, 0}, 0, 0, 0).t0, 0.0);
  const DelayBreakdown m = delay_report({0.5, 1.5, 2.0, 4.0}, 1, 2, 3);
  EXPECT_DOUBLE_EQ(m.t2, 2.0);
  EXPECT_DOUBLE_EQ(m.t0, m.t1 + 4 * m.t2 + m.t3 + m.t4);
  EXPECT_EQ(d.to_line().rfind("delay t0=", 0), 0u);
}

TEST(Delay, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(delay_report({1, -1, 1, 1}, 0, 0, 0), ConfigError);
  EXPECT_THROW(delay_report({1, 1, 1, 1}, -0.1, 0, 0), ConfigError);
  EXPECT_THROW(delay_report({1, 1, 1, 1}, 0, 0, std::numeric_limits<double>::infinity()), ConfigError);
}

TEST(Socket, PortFromEnvironment) {
  ::unsetenv("TAE_TEST_PORT");
  EXPECT_EQ(port_from_env("TAE_TEST_PORT", 77), 77);
  ::setenv("TAE_TEST_PORT", "5123", 1);
  EXPECT_EQ(port_from_env("TAE_TEST_PORT", 77), 5123);
  ::setenv("TAE_TEST_PORT", "70000", 1);
  EXPECT_THROW(port_from_env("TAE_TEST_PORT", 77), ConfigError);
  ::unsetenv("TAE_TEST_PORT");
}

// --- loopback role tests -------------------------------------------------

data::Dataset small_split(std::uint64_t seed) { return data::split(data::synth_shapes(60, seed), {5, 1}, seed); }

PublisherOptions publisher_options(std::uint16_t port) {
  PublisherOptions o;
  o.port = port;
  o.archnet_training.epochs = 5;
  o.archnet_training.adam.lr = 1e-3;
  o.required_epochs = 2;
  o.io_timeout = 20s;
  o.result_timeout = 120s;
  return o;
}

WorkerOptions worker_options(std::uint16_t port, std::uint64_t id) {
  WorkerOptions o;
  o.port = port;
  o.worker_id = id;
  o.io_timeout = 20s;
  o.idle_timeout = 60s;
  o.payment_timeout = 60s;
  return o;
}

class RunningServer {
 public:
  explicit RunningServer(ServerOptions o = {}) : server_(std::move(o)) {
    thread_ = std::jthread([this](std::stop_token st) { server_.serve(st); });
  }
  ~RunningServer() { stop(); }
  void stop() {
    if (thread_.joinable()) {
      thread_.request_stop();
      thread_.join();
    }
  }
  std::uint16_t port() const { return server_.port(); }
  std::vector<TaskRecord> tasks() const { return server_.tasks(); }

 private:
  Server server_;
  std::jthread thread_;
};

TEST(Roles, UnreachableServerFailsBeforeAnyWork) {
  std::uint16_t port = 0;
  {
    Listener l("127.0.0.1", 0);
    port = l.port();
  }
  PublisherOptions o = publisher_options(port);
  o.io_timeout = 2s;
  o.archnet_training.epochs = 500;
  const auto start = std::chrono::steady_clock::now();
  EXPECT_THROW(run_publisher(o, small_split(1)), ProtocolError);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 3s);
}

TEST(Roles, HappyPathHidesDataAndModelArchitecture) {
  testing::WireRecorder rec;
  ServerOptions so;
  so.tap = rec.tap();
  RunningServer server(so);
  const data::Dataset plain = small_split(1);

  PublisherOptions po = publisher_options(server.port());
  po.tap = rec.tap();
  auto pub = std::async(std::launch::async, [&] { return run_publisher(po, plain); });
  WorkerOptions wo = worker_options(server.port(), 1);
  wo.tap = rec.tap();
  const WorkerResult w = run_worker(wo);
  const PublisherResult p = pub.get();
  server.stop();

  ASSERT_TRUE(w.served);
  ASSERT_TRUE(w.payment.has_value());
  EXPECT_EQ(w.payment->amount, 100u);
  EXPECT_EQ(p.server_accuracy, p.local_accuracy);
  EXPECT_DOUBLE_EQ(p.delay.t0, p.delay.t1 + 4 * p.delay.t2 + p.delay.t3 + p.delay.t4);
  EXPECT_EQ(p.delay.t3, w.t3);

  // The checkpoint reloads bit-identically at the publisher.
  const auto sent = classifier::TrainedClassifier::from_checkpoint(io::decode_checkpoint(w.checkpoint));
  EXPECT_TRUE(sent.net == p.model.net);

  const auto tasks = server.tasks();
  ASSERT_EQ(tasks.size(), 1u);
  EXPECT_EQ(tasks[0].status, TaskStatus::kReturned);

  const auto frames = rec.frames();
  const auto pixel_windows = testing::float_windows(plain.images.data());
  // Positive control: the scanner does see plain pixels when they are sent.
  const std::vector<testing::TapFrame> leak{{"control", Direction::kSent, data::encode_aenc(plain)}};
  EXPECT_GT(testing::count_hits(leak, pixel_windows), plain.images.numel() / 2);
  EXPECT_EQ(testing::count_hits(frames, pixel_windows), 0u);
  std::vector<double> decoder_values;
  for (const auto& np : p.archnet.decoder.parameters())
    for (double v : np.param.value.data()) decoder_values.push_back(v);
  EXPECT_EQ(testing::count_hits(frames, testing::float_windows(decoder_values)), 0u);
  EXPECT_FALSE(testing::contains_text(frames, "decoder"));
  EXPECT_FALSE(testing::contains_text(frames, "adam"));
  // The worker only ever sends RequestTask and ModelReturn.
  for (const auto& f : frames) {
    if (f.endpoint == "worker" && f.direction == Direction::kSent) {
      const auto type = static_cast<MessageType>(f.bytes[4]);
      EXPECT_TRUE(type == MessageType::kRequestTask || type == MessageType::kModelReturn);
    }
  }
}

TEST(Roles, TwoWorkersOneAssignment) {
  RunningServer server;
  auto pub = std::async(std::launch::async, [&] { return run_publisher(publisher_options(server.port()), small_split(2)); });
  WorkerOptions a = worker_options(server.port(), 1), b = worker_options(server.port(), 2);
  a.idle_timeout = b.idle_timeout = 8s;
  auto wa = std::async(std::launch::async, [&] { return run_worker(a); });
  auto wb = std::async(std::launch::async, [&] { return run_worker(b); });
  const PublisherResult p = pub.get();
  const WorkerResult ra = wa.get(), rb = wb.get();
  server.stop();
  EXPECT_EQ(static_cast<int>(ra.served) + static_cast<int>(rb.served), 1);
  EXPECT_EQ(server.tasks().size(), 1u);
  EXPECT_EQ(server.tasks()[0].requeues, 0u);
  EXPECT_EQ(p.task_id, server.tasks()[0].id);
}

TEST(Roles, MalformedCheckpointFailsTask) {
  RunningServer server;
  auto pub = std::async(std::launch::async, [&] { return run_publisher(publisher_options(server.port()), small_split(3)); });

  Socket s = connect_tcp("127.0.0.1", server.port(), 10s);
  TaskAnnounce ann;
  for (;;) {
    send_message(s, to_message(RequestTask{9}), 10s);
    const Received r = expect_message(s, 10s);
    if (r.message.type == MessageType::kTaskAnnounce) {
      ann = as_task_announce(r.message);
      break;
    }
    std::this_thread::sleep_for(20ms);
  }
  expect_message(s, 10s);  // the training split
  send_message(s, to_message(ModelReturn{ann.task_id, 0.1, 0.0, io::Bytes{1, 2, 3, 4}}), 10s);
  const Received reply = expect_message(s, 30s);
  ASSERT_EQ(reply.message.type, MessageType::kError);
  EXPECT_EQ(as_error_report(reply.message).code, ErrorCode::kMalformedCheckpoint);

  try {
    pub.get();
    FAIL() << "publisher should see the failure";
  } catch (const RemoteError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedCheckpoint);
  }
  server.stop();
  ASSERT_EQ(server.tasks().size(), 1u);
  EXPECT_EQ(server.tasks()[0].status, TaskStatus::kFailed);
}

TEST(Roles, ShapeMismatchRequeuesOnce) {
  RunningServer server;
  auto pub = std::async(std::launch::async, [&] { return run_publisher(publisher_options(server.port()), small_split(4)); });
  WorkerOptions wrong = worker_options(server.port(), 1);
  wrong.classifier = classifier::default_config({3, 8, 8}, 4);
  EXPECT_THROW(run_worker(wrong), ShapeError);
  const WorkerResult good = run_worker(worker_options(server.port(), 2));
  const PublisherResult p = pub.get();
  server.stop();
  EXPECT_TRUE(good.payment.has_value());
  ASSERT_EQ(server.tasks().size(), 1u);
  EXPECT_EQ(server.tasks()[0].requeues, 1u);
  EXPECT_EQ(server.tasks()[0].status, TaskStatus::kReturned);
  EXPECT_EQ(p.task_id, good.task_id);
}

TEST(Roles, TamperedTransferAbortsOnDigest) {
  ServerOptions so;
  so.transfer_hook = [](DatasetTransfer& t) { t.train_aenc[t.train_aenc.size() / 2] ^= 0x01; };
  RunningServer server(so);
  auto pub = std::async(std::launch::async, [&] { return run_publisher(publisher_options(server.port()), small_split(5)); });
  EXPECT_THROW(run_worker(worker_options(server.port(), 1)), ProtocolError);
  try {
    pub.get();
    FAIL() << "publisher should see the failure";
  } catch (const RemoteError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDigestMismatch);
  }
  server.stop();
  EXPECT_EQ(server.tasks()[0].status, TaskStatus::kFailed);
}

TEST(Roles, DelayComponentsMatchTimestamps) {
  RunningServer server;
  auto pub = std::async(std::launch::async, [&] { return run_publisher(publisher_options(server.port()), small_split(6)); });
  // Let the task sit in the queue for a measurable time.
  std::this_thread::sleep_for(300ms);
  const auto start = std::chrono::steady_clock::now();
  const WorkerResult w = run_worker(worker_options(server.port(), 1));
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const PublisherResult p = pub.get();
  server.stop();

  const TaskRecord t = server.tasks().at(0);
  const double assigned = *t.entered[static_cast<std::size_t>(TaskStatus::kAssigned)];
  const double posted = *t.entered[static_cast<std::size_t>(TaskStatus::kPosted)];
  EXPECT_DOUBLE_EQ(p.delay.t4, (assigned - posted) + (*t.validation_started - *t.model_received));
  EXPECT_GE(*t.validation_started, *t.model_received);
  EXPECT_GT(w.t3, 0.0);
  EXPECT_LE(w.t3, wall);
  for (double leg : p.delay.legs) EXPECT_GE(leg, 0.0);
}

}  // namespace
}  // namespace tae::protocol
