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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "tae/io/binary.hpp"

namespace tae::protocol {

// Frame: u32 BE payload length | u8 tag | payload | u32 BE CRC32(tag|payload).
enum class MessageType : std::uint8_t {
  kPostDataset = 1,
  kTaskAnnounce = 2,
  kRequestTask = 3,
  kDatasetTransfer = 4,
  kModelReturn = 5,
  kValidationResult = 6,
  kPaymentAck = 7,
  kError = 8,
};

const char* message_type_name(MessageType type);

inline constexpr std::size_t kFrameHeaderSize = 5;
inline constexpr std::size_t kFrameTrailerSize = 4;
inline constexpr std::size_t kDefaultMaxPayload = std::size_t{256} << 20;

struct Message {
  MessageType type = MessageType::kError;
  io::Bytes payload;
  friend bool operator==(const Message&, const Message&) = default;
};

// Throws ProtocolError when the payload exceeds max_payload.
io::Bytes encode_message(const Message& m, std::size_t max_payload = kDefaultMaxPayload);
// Exactly one frame. Throws ParseError on truncation, trailing bytes, an
// unknown tag, an oversize length or a CRC mismatch.
Message decode_message(std::span<const std::uint8_t> frame, std::size_t max_payload = kDefaultMaxPayload);
// Payload length announced by a 5-byte header; validates tag and size.
std::size_t frame_payload_length(std::span<const std::uint8_t, kFrameHeaderSize> header,
                                 std::size_t max_payload = kDefaultMaxPayload);

// Typed payloads. Every decode consumes the whole payload or throws
// ParseError.

// Publisher -> server. Datasets travel as AENC bytes; digests are
// dataset_digest() of those bytes.
struct PostDataset {
  std::uint32_t required_epochs = 0;
  std::uint32_t num_classes = 0;
  std::uint64_t train_digest = 0;
  std::uint64_t val_digest = 0;
  io::Bytes train_aenc;
  io::Bytes val_aenc;
  friend bool operator==(const PostDataset&, const PostDataset&) = default;
};

// Server -> worker, ahead of the DatasetTransfer.
struct TaskAnnounce {
  std::uint64_t task_id = 0;
  std::uint64_t digest = 0;
  std::uint32_t required_epochs = 0;
  std::uint32_t num_classes = 0;
  std::array<std::uint32_t, 3> sample_shape{};  // C,H,W
  friend bool operator==(const TaskAnnounce&, const TaskAnnounce&) = default;
};

struct RequestTask {
  std::uint64_t worker_id = 0;
  friend bool operator==(const RequestTask&, const RequestTask&) = default;
};

struct DatasetTransfer {
  std::uint64_t task_id = 0;
  io::Bytes train_aenc;
  friend bool operator==(const DatasetTransfer&, const DatasetTransfer&) = default;
};

// Worker -> server and server -> publisher. `leg_seconds` is the transfer
// time the sender measured for the frame it last received.
struct ModelReturn {
  std::uint64_t task_id = 0;
  double t3_seconds = 0.0;
  double leg_seconds = 0.0;
  io::Bytes checkpoint;
  friend bool operator==(const ModelReturn&, const ModelReturn&) = default;
};

// Server -> publisher. legs[0..2]: publisher->server, server->worker,
// worker->server.
struct ValidationResult {
  std::uint64_t task_id = 0;
  double accuracy = 0.0;
  double t3_seconds = 0.0;
  double t4_seconds = 0.0;
  std::array<double, 3> legs{};
  friend bool operator==(const ValidationResult&, const ValidationResult&) = default;
};

struct PaymentAck {
  std::uint64_t task_id = 0;
  std::uint64_t amount = 0;
  friend bool operator==(const PaymentAck&, const PaymentAck&) = default;
};

enum class ErrorCode : std::uint32_t {
  kNoTask = 1,
  kDigestMismatch = 2,
  kShapeMismatch = 3,
  kMalformedCheckpoint = 4,
  kTrainingFailed = 5,
  kValidationFailed = 6,
  kProtocol = 7,
  kShutdown = 8,
};

const char* error_code_name(ErrorCode code);

struct ErrorReport {
  ErrorCode code = ErrorCode::kProtocol;
  std::uint64_t task_id = 0;
  std::string detail;
  friend bool operator==(const ErrorReport&, const ErrorReport&) = default;
};

Message to_message(const PostDataset& p);
Message to_message(const TaskAnnounce& p);
Message to_message(const RequestTask& p);
Message to_message(const DatasetTransfer& p);
Message to_message(const ModelReturn& p);
Message to_message(const ValidationResult& p);
Message to_message(const PaymentAck& p);
Message to_message(const ErrorReport& p);

// Each throws ProtocolError if m has a different type.
PostDataset as_post_dataset(const Message& m);
TaskAnnounce as_task_announce(const Message& m);
RequestTask as_request_task(const Message& m);
DatasetTransfer as_dataset_transfer(const Message& m);
ModelReturn as_model_return(const Message& m);
ValidationResult as_validation_result(const Message& m);
PaymentAck as_payment_ack(const Message& m);
ErrorReport as_error_report(const Message& m);

// FNV-1a 64 over the bytes.
std::uint64_t dataset_digest(std::span<const std::uint8_t> bytes);

}  // namespace tae::protocol
