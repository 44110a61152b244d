#include <doctest.h>

#include <chrono>

#include "phasecal/transport.hpp"

using namespace phasecal;
using namespace std::chrono_literals;

TEST_CASE("in-process link is FIFO and reports empty as a timeout") {
    InProcessLink link;
    CHECK_FALSE(link.receive(0ms).has_value());
    link.send({1, 2, 0.5, 3});
    link.send({2, 2, -0.5, 3});
    CHECK(link.receive(0ms)->chain_index == 1);
    CHECK(link.receive(0ms)->chain_index == 2);
    CHECK_FALSE(link.receive(0ms).has_value());
}

TEST_CASE("UDP loopback link delivers bit-exact messages") {
    UdpLink link;
    CHECK(link.port() != 0);
    const FeedbackMessage m{3, 123456, -2.718281828459045, 987654321};
    link.send(m);
    const auto got = link.receive(500ms);
    REQUIRE(got.has_value());
    CHECK(*got == m);
    CHECK_FALSE(link.receive(10ms).has_value());
}

TEST_CASE("transport names") {
    CHECK(transport_kind_from_string("inproc") == TransportKind::inproc);
    CHECK(transport_kind_from_string("udp") == TransportKind::udp);
    CHECK_THROWS(transport_kind_from_string("tcp"));
    CHECK(make_link(TransportKind::inproc) != nullptr);
}
