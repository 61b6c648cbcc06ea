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

#include "tae/protocol/message.hpp"

#include "tae/error.hpp"

namespace tae::protocol {

const char* message_type_name(MessageType type) {
  switch (type) {
    case MessageType::kPostDataset: return "PostDataset";
    case MessageType::kTaskAnnounce: return "TaskAnnounce";
    case MessageType::kRequestTask: return "RequestTask";
    case MessageType::kDatasetTransfer: return "DatasetTransfer";
    case MessageType::kModelReturn: return "ModelReturn";
    case MessageType::kValidationResult: return "ValidationResult";
    case MessageType::kPaymentAck: return "PaymentAck";
    case MessageType::kError: return "Error";
  }
  return "?";
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoTask: return "no-task";
    case ErrorCode::kDigestMismatch: return "digest-mismatch";
    case ErrorCode::kShapeMismatch: return "shape-mismatch";
    case ErrorCode::kMalformedCheckpoint: return "malformed-checkpoint";
    case ErrorCode::kTrainingFailed: return "training-failed";
    case ErrorCode::kValidationFailed: return "validation-failed";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kShutdown: return "shutdown";
  }
  return "?";
}

namespace {

bool known_tag(std::uint8_t tag) { return tag >= 1 && tag <= 8; }

std::uint32_t frame_crc(std::uint8_t tag, std::span<const std::uint8_t> payload) {
  io::Bytes buf;
  buf.reserve(payload.size() + 1);
  buf.push_back(tag);
  buf.insert(buf.end(), payload.begin(), payload.end());
  return io::crc32(buf);
}

void put_blob(io::ByteWriter& w, std::span<const std::uint8_t> blob) {
  w.u64_le(blob.size());
  w.raw(blob);
}

io::Bytes get_blob(io::ByteReader& r) {
  const std::uint64_t n = r.u64_le();
  if (n > r.remaining()) throw ParseError("blob length exceeds payload", r.offset());
  auto s = r.raw(static_cast<std::size_t>(n));
  return io::Bytes(s.begin(), s.end());
}

void expect_type(const Message& m, MessageType t) {
  if (m.type != t) {
    throw ProtocolError(std::string("expected ") + message_type_name(t) + ", got " + message_type_name(m.type));
  }
}

}  // namespace

io::Bytes encode_message(const Message& m, std::size_t max_payload) {
  if (m.payload.size() > max_payload || m.payload.size() > 0xFFFFFFFFu) {
    throw ProtocolError("payload of " + std::to_string(m.payload.size()) + " bytes exceeds the frame limit of " +
                        std::to_string(max_payload));
  }
  const auto tag = static_cast<std::uint8_t>(m.type);
  if (!known_tag(tag)) throw ProtocolError("unknown message tag " + std::to_string(tag));
  io::ByteWriter w;
  w.u32_be(static_cast<std::uint32_t>(m.payload.size()));
  w.u8(tag);
  w.raw(m.payload);
  w.u32_be(frame_crc(tag, m.payload));
  return w.take();
}

std::size_t frame_payload_length(std::span<const std::uint8_t, kFrameHeaderSize> header, std::size_t max_payload) {
  io::ByteReader r(header);
  const std::uint32_t len = r.u32_be();
  const std::uint8_t tag = r.u8();
  if (!known_tag(tag)) throw ParseError("unknown message tag " + std::to_string(tag), 4);
  if (len > max_payload) throw ParseError("frame length " + std::to_string(len) + " exceeds the limit", 0);
  return len;
}

Message decode_message(std::span<const std::uint8_t> frame, std::size_t max_payload) {
  if (frame.size() < kFrameHeaderSize) throw ParseError("truncated frame header", frame.size());
  const std::size_t len = frame_payload_length(frame.first<kFrameHeaderSize>(), max_payload);
  io::ByteReader r(frame);
  r.raw(kFrameHeaderSize);
  Message m;
  m.type = static_cast<MessageType>(frame[4]);
  auto payload = r.raw(len);
  const std::uint32_t crc = r.u32_be();
  r.expect_end("frame");
  if (crc != frame_crc(frame[4], payload)) throw ParseError("frame CRC mismatch", kFrameHeaderSize + len);
  m.payload.assign(payload.begin(), payload.end());
  return m;
}

std::uint64_t dataset_digest(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

Message to_message(const PostDataset& p) {
  io::ByteWriter w;
  w.u32_le(p.required_epochs);
  w.u32_le(p.num_classes);
  w.u64_le(p.train_digest);
  w.u64_le(p.val_digest);
  put_blob(w, p.train_aenc);
  put_blob(w, p.val_aenc);
  return {MessageType::kPostDataset, w.take()};
}

PostDataset as_post_dataset(const Message& m) {
  expect_type(m, MessageType::kPostDataset);
  io::ByteReader r(m.payload);
  PostDataset p;
  p.required_epochs = r.u32_le();
  p.num_classes = r.u32_le();
  p.train_digest = r.u64_le();
  p.val_digest = r.u64_le();
  p.train_aenc = get_blob(r);
  p.val_aenc = get_blob(r);
  r.expect_end("PostDataset");
  return p;
}

Message to_message(const TaskAnnounce& p) {
  io::ByteWriter w;
  w.u64_le(p.task_id);
  w.u64_le(p.digest);
  w.u32_le(p.required_epochs);
  w.u32_le(p.num_classes);
  for (auto d : p.sample_shape) w.u32_le(d);
  return {MessageType::kTaskAnnounce, w.take()};
}

TaskAnnounce as_task_announce(const Message& m) {
  expect_type(m, MessageType::kTaskAnnounce);
  io::ByteReader r(m.payload);
  TaskAnnounce p;
  p.task_id = r.u64_le();
  p.digest = r.u64_le();
  p.required_epochs = r.u32_le();
  p.num_classes = r.u32_le();
  for (auto& d : p.sample_shape) d = r.u32_le();
  r.expect_end("TaskAnnounce");
  return p;
}

Message to_message(const RequestTask& p) {
  io::ByteWriter w;
  w.u64_le(p.worker_id);
  return {MessageType::kRequestTask, w.take()};
}

RequestTask as_request_task(const Message& m) {
  expect_type(m, MessageType::kRequestTask);
  io::ByteReader r(m.payload);
  RequestTask p;
  p.worker_id = r.u64_le();
  r.expect_end("RequestTask");
  return p;
}

Message to_message(const DatasetTransfer& p) {
  io::ByteWriter w;
  w.u64_le(p.task_id);
  put_blob(w, p.train_aenc);
  return {MessageType::kDatasetTransfer, w.take()};
}

DatasetTransfer as_dataset_transfer(const Message& m) {
  expect_type(m, MessageType::kDatasetTransfer);
  io::ByteReader r(m.payload);
  DatasetTransfer p;
  p.task_id = r.u64_le();
  p.train_aenc = get_blob(r);
  r.expect_end("DatasetTransfer");
  return p;
}

Message to_message(const ModelReturn& p) {
  io::ByteWriter w;
  w.u64_le(p.task_id);
  w.f64_le(p.t3_seconds);
  w.f64_le(p.leg_seconds);
  put_blob(w, p.checkpoint);
  return {MessageType::kModelReturn, w.take()};
}

ModelReturn as_model_return(const Message& m) {
  expect_type(m, MessageType::kModelReturn);
  io::ByteReader r(m.payload);
  ModelReturn p;
  p.task_id = r.u64_le();
  p.t3_seconds = r.f64_le();
  p.leg_seconds = r.f64_le();
  p.checkpoint = get_blob(r);
  r.expect_end("ModelReturn");
  return p;
}

Message to_message(const ValidationResult& p) {
  io::ByteWriter w;
  w.u64_le(p.task_id);
  w.f64_le(p.accuracy);
  w.f64_le(p.t3_seconds);
  w.f64_le(p.t4_seconds);
  for (double l : p.legs) w.f64_le(l);
  return {MessageType::kValidationResult, w.take()};
}

ValidationResult as_validation_result(const Message& m) {
  expect_type(m, MessageType::kValidationResult);
  io::ByteReader r(m.payload);
  ValidationResult p;
  p.task_id = r.u64_le();
  p.accuracy = r.f64_le();
  p.t3_seconds = r.f64_le();
  p.t4_seconds = r.f64_le();
  for (double& l : p.legs) l = r.f64_le();
  r.expect_end("ValidationResult");
  return p;
}

Message to_message(const PaymentAck& p) {
  io::ByteWriter w;
  w.u64_le(p.task_id);
  w.u64_le(p.amount);
  return {MessageType::kPaymentAck, w.take()};
}

PaymentAck as_payment_ack(const Message& m) {
  expect_type(m, MessageType::kPaymentAck);
  io::ByteReader r(m.payload);
  PaymentAck p;
  p.task_id = r.u64_le();
  p.amount = r.u64_le();
  r.expect_end("PaymentAck");
  return p;
}

Message to_message(const ErrorReport& p) {
  io::ByteWriter w;
  w.u32_le(static_cast<std::uint32_t>(p.code));
  w.u64_le(p.task_id);
  w.u32_le(static_cast<std::uint32_t>(p.detail.size()));
  w.raw(p.detail);
  return {MessageType::kError, w.take()};
}

ErrorReport as_error_report(const Message& m) {
  expect_type(m, MessageType::kError);
  io::ByteReader r(m.payload);
  ErrorReport p;
  const std::uint32_t code = r.u32_le();
  if (code < 1 || code > 8) throw ParseError("unknown error code " + std::to_string(code), 0);
  p.code = static_cast<ErrorCode>(code);
  p.task_id = r.u64_le();
  p.detail = r.str(r.u32_le());
  r.expect_end("Error");
  return p;
}

}  // namespace tae::protocol
