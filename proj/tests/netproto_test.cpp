#include "onoff/netproto.hpp"

#include <random>

#include <boost/asio.hpp>
#include <gtest/gtest.h>

namespace onoff::net {
namespace {

using Bytes = std::vector<std::uint8_t>;

ErrorCode decode_error(const Bytes& bytes) {
  try {
    decode_frame(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kRemote;
}

TEST(FrameCodecTest, QueryLayoutIsBitExact) {
  const Bytes expect = {0x4F, 0x50, 0x01, 0x01, 0, 0, 0, 0, 0, 0, 0, 0x05, 0, 0, 0, 0x01, 0x03};
  EXPECT_EQ(encode_frame(make_query(5, QuerySymbol::kAB)), expect);
  EXPECT_EQ(decode_frame(expect), make_query(5, QuerySymbol::kAB));
}

TEST(FrameCodecTest, BigEndianFields) {
  const auto bytes = encode_frame(make_answer(0x0102030405060708ULL, Bytes(0x10, 0xAA)));
  EXPECT_EQ(Bytes(bytes.begin() + 4, bytes.begin() + 16),
            (Bytes{1, 2, 3, 4, 5, 6, 7, 8, 0, 0, 0, 0x10}));
  EXPECT_EQ(decode_frame(bytes).body.size(), 16u);
}

TEST(FrameCodecTest, Errors) {
  const Bytes good = encode_frame(make_query(1, QuerySymbol::kA));
  Bytes bad = good;
  bad[0] = 0x00;
  EXPECT_EQ(decode_error(bad), ErrorCode::kBadMagic);
  bad = good;
  bad[2] = 0x02;
  EXPECT_EQ(decode_error(bad), ErrorCode::kBadVersion);
  bad = good;
  bad[3] = 0x07;
  EXPECT_EQ(decode_error(bad), ErrorCode::kBadKind);
  EXPECT_EQ(decode_error(Bytes(good.begin(), good.end() - 1)), ErrorCode::kTruncatedFrame);
  EXPECT_EQ(decode_error(Bytes(good.begin(), good.begin() + 9)), ErrorCode::kTruncatedFrame);
  bad = good;
  bad.push_back(0);
  EXPECT_EQ(decode_error(bad), ErrorCode::kTrailingBytes);
  bad = good;
  bad.back() = 0;
  EXPECT_EQ(decode_error(bad), ErrorCode::kBadQueryMask);
  bad.back() = 4;
  EXPECT_EQ(decode_error(bad), ErrorCode::kBadQueryMask);
}

TEST(FrameCodecTest, RandomRoundTrip) {
  std::mt19937_64 gen(9);
  for (int i = 0; i < 2000; ++i) {
    Frame f;
    f.kind = static_cast<FrameKind>(1 + gen() % 3);
    f.time = gen();
    if (f.kind == FrameKind::kQuery) {
      f.body = {static_cast<std::uint8_t>(1 + gen() % 3)};
    } else {
      f.body.resize(gen() % 300);
      for (auto& b : f.body) b = static_cast<std::uint8_t>(gen());
    }
    ASSERT_EQ(decode_frame(encode_frame(f)), f);
  }
}

TEST(WireCodeTest, RoundTrip) {
  for (ErrorCode c : {ErrorCode::kBadMagic, ErrorCode::kBadVersion, ErrorCode::kBadKind,
                      ErrorCode::kTruncatedFrame, ErrorCode::kBadQueryMask,
                      ErrorCode::kTrailingBytes}) {
    EXPECT_EQ(from_wire_code(wire_code(c)), c);
  }
}

class LiveServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<Server>("127.0.0.1", 0, 64, 77);
    server_->start();
  }
  void TearDown() override { server_->stop(); }

  Frame exchange(const Bytes& request) {
    namespace asio = boost::asio;
    asio::io_context io;
    asio::ip::tcp::socket socket(io);
    socket.connect({asio::ip::make_address("127.0.0.1"), server_->port()});
    asio::write(socket, asio::buffer(request));
    Bytes bytes(kHeaderSize);
    asio::read(socket, asio::buffer(bytes));
    const auto h = decode_header(bytes);
    bytes.resize(kHeaderSize + h.body_len);
    asio::read(socket, asio::buffer(bytes.data() + kHeaderSize, h.body_len));
    return decode_frame(bytes);
  }

  std::unique_ptr<Server> server_;
};

TEST_F(LiveServerTest, AnswersCarryExactlyTheRequestedPayloads) {
  for (QuerySymbol q : kQuerySymbols) {
    const Frame reply = exchange(encode_frame(make_query(3, q)));
    EXPECT_EQ(reply.kind, FrameKind::kAnswer);
    EXPECT_EQ(reply.time, 3u);
    EXPECT_EQ(reply.body.size(), size(q) * 8);
  }
}

TEST_F(LiveServerTest, RepeatedTimeReusesMessagesWithinAConnection) {
  namespace asio = boost::asio;
  asio::io_context io;
  asio::ip::tcp::socket socket(io);
  socket.connect({asio::ip::make_address("127.0.0.1"), server_->port()});
  auto ask = [&](QuerySymbol q) {
    const auto req = encode_frame(make_query(11, q));
    asio::write(socket, asio::buffer(req));
    Bytes bytes(kHeaderSize);
    asio::read(socket, asio::buffer(bytes));
    const auto h = decode_header(bytes);
    bytes.resize(kHeaderSize + h.body_len);
    asio::read(socket, asio::buffer(bytes.data() + kHeaderSize, h.body_len));
    return decode_frame(bytes).body;
  };
  const Bytes both = ask(QuerySymbol::kAB);
  EXPECT_EQ(ask(QuerySymbol::kA), Bytes(both.begin(), both.begin() + 8));
  EXPECT_EQ(ask(QuerySymbol::kB), Bytes(both.begin() + 8, both.end()));
}

TEST_F(LiveServerTest, ProtocolErrorsGetErrorFrames) {
  Bytes bad = encode_frame(make_query(1, QuerySymbol::kA));
  bad.back() = 0;
  Frame reply = exchange(bad);
  EXPECT_EQ(reply.kind, FrameKind::kError);
  ASSERT_EQ(reply.body.size(), 1u);
  EXPECT_EQ(from_wire_code(reply.body[0]), ErrorCode::kBadQueryMask);

  bad = encode_frame(make_query(1, QuerySymbol::kA));
  bad[1] = 0;
  reply = exchange(bad);
  EXPECT_EQ(from_wire_code(reply.body[0]), ErrorCode::kBadMagic);

  reply = exchange(encode_frame(make_answer(2, Bytes(4, 1))));
  EXPECT_EQ(from_wire_code(reply.body[0]), ErrorCode::kBadKind);
}

TEST_F(LiveServerTest, FetchMatchesInProcessSimulator) {
  SessionConfig cfg;
  cfg.matrix = parse_matrix("2/3 1/3 1/5 4/5");
  cfg.pattern = PrivacyPattern::parse("ON,OFF,OFF,ON,OFF");
  cfg.horizon = 4;
  cfg.message_bits = 64;
  cfg.trials = 400;
  cfg.seed = 5150;
  cfg.trace = true;
  const auto local = run_session(cfg);
  const auto remote = fetch("127.0.0.1", server_->port(), cfg);
  EXPECT_EQ(remote.traces, local.traces);
  EXPECT_EQ(remote.steps, local.steps);
  EXPECT_EQ(remote.decode_failures, 0u);
}

TEST_F(LiveServerTest, ConcurrentSessions) {
  SessionConfig cfg;
  cfg.message_bits = 64;
  cfg.trials = 200;
  cfg.horizon = 2;
  std::vector<std::thread> clients;
  std::vector<SessionStats> results(4);
  for (std::size_t k = 0; k < results.size(); ++k) {
    clients.emplace_back([&, k] {
      SessionConfig mine = cfg;
      mine.seed = k;
      results[k] = fetch("127.0.0.1", server_->port(), mine);
    });
  }
  for (auto& c : clients) c.join();
  for (std::size_t k = 0; k < results.size(); ++k) {
    SessionConfig mine = cfg;
    mine.seed = k;
    EXPECT_EQ(results[k].steps, run_session(mine).steps);
  }
}

}  // namespace
}  // namespace onoff::net
