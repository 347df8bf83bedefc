#include "onoff/netproto.hpp"

#include <array>
#include <atomic>
#include <map>
#include <random>
#include <thread>

#include <boost/asio.hpp>

namespace onoff::net {
namespace asio = boost::asio;
using asio::ip::tcp;

namespace {

void put_be(std::vector<std::uint8_t>& out, std::uint64_t value, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

std::uint64_t get_be(std::span<const std::uint8_t> in) {
  std::uint64_t value = 0;
  for (std::uint8_t b : in) value = (value << 8) | b;
  return value;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Messages older than this many steps behind the newest are dropped.
constexpr std::uint64_t kRetainedSteps = 64;

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  Connection(tcp::socket socket, std::size_t message_bits, std::uint64_t seed)
      : socket_(std::move(socket)), message_bits_(message_bits), seed_(seed) {}

  void start() { read_header(); }

 private:
  void read_header() {
    auto self = shared_from_this();
    asio::async_read(socket_, asio::buffer(header_),
                     [this, self](boost::system::error_code ec, std::size_t) {
                       if (ec) return;
                       FrameHeader h;
                       try {
                         h = decode_header(header_);
                         if (h.body_len > kMaxBodySize) {
                           throw Error(ErrorCode::kTruncatedFrame, "body too large");
                         }
                       } catch (const Error& e) {
                         fail(0, e.code());
                         return;
                       }
                       read_body(h);
                     });
  }

  void read_body(const FrameHeader& h) {
    body_.resize(h.body_len);
    auto self = shared_from_this();
    asio::async_read(socket_, asio::buffer(body_),
                     [this, self, h](boost::system::error_code ec, std::size_t) {
                       if (ec) return;
                       std::vector<std::uint8_t> bytes(header_.begin(), header_.end());
                       bytes.insert(bytes.end(), body_.begin(), body_.end());
                       Frame request;
                       try {
                         request = decode_frame(bytes);
                         if (request.kind != FrameKind::kQuery) {
                           throw Error(ErrorCode::kBadKind, "server accepts only QUERY frames");
                         }
                       } catch (const Error& e) {
                         fail(h.time, e.code());
                         return;
                       }
                       reply(make_answer(request.time, answer(query_of(request), store(request.time))),
                             true);
                     });
  }

  const MessageStore& store(std::uint64_t time) {
    auto it = stores_.find(time);
    if (it == stores_.end()) {
      std::mt19937_64 gen(mix(seed_ ^ mix(time)));
      MessageStore fresh;
      for (Source s : kSources) fresh.messages[index(s)] = random_message(gen, message_bits_);
      it = stores_.emplace(time, std::move(fresh)).first;
      if (time >= kRetainedSteps) stores_.erase(stores_.begin(), stores_.lower_bound(time - kRetainedSteps));
    }
    return it->second;
  }

  void fail(std::uint64_t time, ErrorCode code) { reply(make_error(time, code), false); }

  void reply(const Frame& f, bool keep_going) {
    out_ = encode_frame(f);
    auto self = shared_from_this();
    asio::async_write(socket_, asio::buffer(out_),
                      [this, self, keep_going](boost::system::error_code ec, std::size_t) {
                        if (ec) return;
                        if (keep_going) {
                          read_header();
                        } else {
                          boost::system::error_code ignored;
                          socket_.shutdown(tcp::socket::shutdown_both, ignored);
                        }
                      });
  }

  tcp::socket socket_;
  std::size_t message_bits_;
  std::uint64_t seed_;
  std::array<std::uint8_t, kHeaderSize> header_{};
  std::vector<std::uint8_t> body_;
  std::vector<std::uint8_t> out_;
  std::map<std::uint64_t, MessageStore> stores_;
};

void read_exact(tcp::socket& socket, std::span<std::uint8_t> out) {
  asio::read(socket, asio::buffer(out.data(), out.size()));
}

}  // namespace

std::vector<std::uint8_t> encode_frame(const Frame& f) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + f.body.size());
  out.push_back(kMagic0);
  out.push_back(kMagic1);
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(f.kind));
  put_be(out, f.time, 8);
  put_be(out, f.body.size(), 4);
  out.insert(out.end(), f.body.begin(), f.body.end());
  return out;
}

FrameHeader decode_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw Error(ErrorCode::kTruncatedFrame, "short header");
  if (bytes[0] != kMagic0 || bytes[1] != kMagic1) throw Error(ErrorCode::kBadMagic, "bad magic");
  if (bytes[2] != kVersion) {
    throw Error(ErrorCode::kBadVersion, "unsupported version " + std::to_string(bytes[2]));
  }
  if (bytes[3] < 1 || bytes[3] > 3) {
    throw Error(ErrorCode::kBadKind, "unknown kind " + std::to_string(bytes[3]));
  }
  return FrameHeader{static_cast<FrameKind>(bytes[3]), get_be(bytes.subspan(4, 8)),
                     static_cast<std::uint32_t>(get_be(bytes.subspan(12, 4)))};
}

Frame decode_frame(std::span<const std::uint8_t> bytes) {
  const FrameHeader h = decode_header(bytes);
  const std::size_t expected = kHeaderSize + h.body_len;
  if (bytes.size() < expected) throw Error(ErrorCode::kTruncatedFrame, "short body");
  if (bytes.size() > expected) throw Error(ErrorCode::kTrailingBytes, "bytes after body");
  Frame f{h.kind, h.time, {bytes.begin() + kHeaderSize, bytes.end()}};
  if (f.kind == FrameKind::kQuery) query_of(f);
  return f;
}

Frame make_query(std::uint64_t time, QuerySymbol q) {
  return Frame{FrameKind::kQuery, time, {static_cast<std::uint8_t>(q)}};
}

Frame make_answer(std::uint64_t time, std::vector<std::uint8_t> payload) {
  return Frame{FrameKind::kAnswer, time, std::move(payload)};
}

Frame make_error(std::uint64_t time, ErrorCode code) {
  return Frame{FrameKind::kError, time, {wire_code(code)}};
}

QuerySymbol query_of(const Frame& f) {
  if (f.body.size() != 1 || f.body[0] == 0 || f.body[0] > 3) {
    throw Error(ErrorCode::kBadQueryMask, "query body must be one mask byte in {1,2,3}");
  }
  return static_cast<QuerySymbol>(f.body[0]);
}

std::uint8_t wire_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadMagic: return 1;
    case ErrorCode::kBadVersion: return 2;
    case ErrorCode::kBadKind: return 3;
    case ErrorCode::kTruncatedFrame: return 4;
    case ErrorCode::kBadQueryMask: return 5;
    case ErrorCode::kTrailingBytes: return 6;
    default: return 255;
  }
}

ErrorCode from_wire_code(std::uint8_t code) {
  switch (code) {
    case 1: return ErrorCode::kBadMagic;
    case 2: return ErrorCode::kBadVersion;
    case 3: return ErrorCode::kBadKind;
    case 4: return ErrorCode::kTruncatedFrame;
    case 5: return ErrorCode::kBadQueryMask;
    case 6: return ErrorCode::kTrailingBytes;
    default: return ErrorCode::kRemote;
  }
}

struct Server::Impl {
  Impl(const std::string& bind_address, std::uint16_t port, std::size_t message_bits,
       std::uint64_t seed)
      : acceptor(io, tcp::endpoint(asio::ip::make_address(bind_address), port)),
        message_bits(message_bits),
        seed(seed) {
    if (message_bits == 0 || message_bits % 8 != 0) {
      throw Error(ErrorCode::kInvalidArgument, "message bits must be a positive multiple of 8");
    }
  }

  void accept() {
    acceptor.async_accept([this](boost::system::error_code ec, tcp::socket socket) {
      if (ec) return;
      socket.set_option(tcp::no_delay(true));
      const std::uint64_t id = connections++;
      std::make_shared<Connection>(std::move(socket), message_bits, mix(seed + id))->start();
      accept();
    });
  }

  asio::io_context io;
  tcp::acceptor acceptor;
  std::size_t message_bits;
  std::uint64_t seed;
  std::uint64_t connections = 0;
  std::thread worker;
};

Server::Server(const std::string& bind_address, std::uint16_t port, std::size_t message_bits,
               std::uint64_t seed)
    : impl_(std::make_unique<Impl>(bind_address, port, message_bits, seed)) {
  impl_->accept();
}

Server::~Server() { stop(); }

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::start() {
  impl_->worker = std::thread([this] { impl_->io.run(); });
}

void Server::run() { impl_->io.run(); }

void Server::stop() {
  impl_->io.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

struct RemoteChannel::Impl {
  Impl(const std::string& host, std::uint16_t port, std::size_t message_bits,
       std::size_t steps_per_trial)
      : socket(io), message_bits(message_bits), steps_per_trial(steps_per_trial) {
    tcp::resolver resolver(io);
    asio::connect(socket, resolver.resolve(host, std::to_string(port)));
    socket.set_option(tcp::no_delay(true));
  }

  asio::io_context io;
  tcp::socket socket;
  std::size_t message_bits;
  std::size_t steps_per_trial;
  std::uint64_t trial = 0;
};

RemoteChannel::RemoteChannel(const std::string& host, std::uint16_t port,
                             std::size_t message_bits, std::size_t steps_per_trial)
    : impl_(std::make_unique<Impl>(host, port, message_bits, steps_per_trial)) {}

RemoteChannel::~RemoteChannel() = default;

void RemoteChannel::begin_trial(std::uint64_t trial) { impl_->trial = trial; }

Answer RemoteChannel::retrieve(std::uint64_t t, QuerySymbol q) {
  const std::uint64_t time = impl_->trial * impl_->steps_per_trial + t;
  const auto request = encode_frame(make_query(time, q));
  asio::write(impl_->socket, asio::buffer(request));

  std::vector<std::uint8_t> bytes(kHeaderSize);
  read_exact(impl_->socket, bytes);
  const FrameHeader h = decode_header(bytes);
  if (h.body_len > kMaxBodySize) throw Error(ErrorCode::kTruncatedFrame, "body too large");
  bytes.resize(kHeaderSize + h.body_len);
  read_exact(impl_->socket, std::span(bytes).subspan(kHeaderSize));
  Frame reply = decode_frame(bytes);
  if (reply.kind == FrameKind::kError) {
    const ErrorCode code = reply.body.empty() ? ErrorCode::kRemote : from_wire_code(reply.body[0]);
    throw Error(ErrorCode::kRemote, "server rejected query: " + std::string(to_string(code)));
  }
  if (reply.kind != FrameKind::kAnswer || reply.time != time) {
    throw Error(ErrorCode::kBadKind, "unexpected reply frame");
  }
  return std::move(reply.body);
}

bool RemoteChannel::authentic(std::uint64_t, Source, const Message& msg) {
  return msg.payload.size() * 8 == impl_->message_bits;
}

SessionStats fetch(const std::string& host, std::uint16_t port, const SessionConfig& cfg,
                   const TrialObserver& observer) {
  validate_config(cfg);
  RemoteChannel channel(host, port, cfg.message_bits, cfg.horizon + 1);
  return run_session(cfg, channel, observer);
}

}  // namespace onoff::net
