#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "onoff/error.hpp"
#include "onoff/scheme.hpp"
#include "onoff/simulator.hpp"

namespace onoff::net {

// Frame layout (big-endian):
//   0  2  magic   0x4F 0x50
//   2  1  version 0x01
//   3  1  kind    1 = QUERY, 2 = ANSWER, 3 = ERROR
//   4  8  time
//  12  4  body_len
//  16  .. body
inline constexpr std::uint8_t kMagic0 = 0x4F;
inline constexpr std::uint8_t kMagic1 = 0x50;
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderSize = 16;
inline constexpr std::uint16_t kDefaultPort = 4791;
inline constexpr std::uint32_t kMaxBodySize = 1U << 24;

enum class FrameKind : std::uint8_t { kQuery = 1, kAnswer = 2, kError = 3 };

struct Frame {
  FrameKind kind = FrameKind::kQuery;
  std::uint64_t time = 0;
  std::vector<std::uint8_t> body;

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct FrameHeader {
  FrameKind kind = FrameKind::kQuery;
  std::uint64_t time = 0;
  std::uint32_t body_len = 0;
};

std::vector<std::uint8_t> encode_frame(const Frame& f);

// Validates magic, version and kind of the first kHeaderSize bytes.
FrameHeader decode_header(std::span<const std::uint8_t> bytes);

// Decodes exactly one frame occupying all of bytes. QUERY bodies must be a
// single mask byte in {1, 2, 3}.
Frame decode_frame(std::span<const std::uint8_t> bytes);

Frame make_query(std::uint64_t time, QuerySymbol q);
Frame make_answer(std::uint64_t time, std::vector<std::uint8_t> payload);
Frame make_error(std::uint64_t time, ErrorCode code);

QuerySymbol query_of(const Frame& f);

// One-byte code carried in ERROR bodies.
std::uint8_t wire_code(ErrorCode code);
ErrorCode from_wire_code(std::uint8_t code);

// Reference server. Each connection is an independent session: messages for
// a frame time are generated on first use and reused if that time is queried
// again on the same connection.
class Server {
 public:
  // port 0 binds an ephemeral port; see port().
  Server(const std::string& bind_address, std::uint16_t port, std::size_t message_bits,
         std::uint64_t seed);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const;

  // Serves on a background thread until stop() or destruction.
  void start();
  // Serves on the calling thread until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Client side of a session. All trials share one connection; trial k's step
// t is sent with frame time k * (horizon + 1) + t so every step gets fresh
// server messages.
class RemoteChannel : public RetrievalChannel {
 public:
  RemoteChannel(const std::string& host, std::uint16_t port, std::size_t message_bits,
                std::size_t steps_per_trial);
  ~RemoteChannel() override;

  void begin_trial(std::uint64_t trial) override;
  Answer retrieve(std::uint64_t t, QuerySymbol q) override;
  bool authentic(std::uint64_t t, Source x, const Message& msg) override;
  void end_trial() override {}

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Runs the same session logic as run_session against a live server.
SessionStats fetch(const std::string& host, std::uint16_t port, const SessionConfig& cfg,
                   const TrialObserver& observer = {});

}  // namespace onoff::net
