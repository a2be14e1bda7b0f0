/*
 * Copyright 2026 The tutharness Authors
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

#include "tut/payload.hpp"

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "tut/error.hpp"

namespace tut {
namespace {

TEST(EncodePayload, FourByteValue) { EXPECT_EQ(encode_payload(Payload{0x02, 0, 0, 0}), "02000000"); }

TEST(EncodePayload, EmptyIsEmptyString) { EXPECT_EQ(encode_payload(Payload{}), ""); }

TEST(EncodePayload, NineZeroBytesGroupInFours) {
  EXPECT_EQ(encode_payload(Payload(std::vector<std::uint8_t>(9, 0))), "00000000 00000000 00");
}

TEST(EncodePayload, Uppercase) { EXPECT_EQ(encode_payload(Payload{0xab, 0xcd}), "ABCD"); }

TEST(DecodePayload, PlainGroup) { EXPECT_EQ(decode_payload("02000000"), (Payload{0x02, 0, 0, 0})); }

TEST(DecodePayload, GroupingIgnored) {
  EXPECT_EQ(decode_payload("0200 0000"), (Payload{0x02, 0, 0, 0}));
  EXPECT_EQ(decode_payload("0 2\t00 00 00"), (Payload{0x02, 0, 0, 0}));
}

TEST(DecodePayload, LowercaseAccepted) { EXPECT_EQ(decode_payload("abcd"), (Payload{0xab, 0xcd})); }

TEST(DecodePayload, EmptyText) { EXPECT_TRUE(decode_payload("").empty()); }

TEST(DecodePayload, NonHexReportsPosition) {
  try {
    decode_payload("0G");
    FAIL() << "expected NonHexCharacter";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonHexCharacter);
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(DecodePayload, OddDigitCount) {
  try {
    decode_payload("020");
    FAIL() << "expected OddDigitCount";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOddDigitCount);
  }
}

TEST(DecodePayload, GarbledSampleTokenRejected) {
  EXPECT_THROW(decode_payload("7:03:0000"), Error);
}

TEST(PayloadFromU32, LittleEndian) {
  EXPECT_EQ(payload_from_u32(2), (Payload{0x02, 0, 0, 0}));
  EXPECT_EQ(payload_from_u32(0x01020304), (Payload{0x04, 0x03, 0x02, 0x01}));
}

TEST(PayloadProperty, RoundTripRandomBytes) {
  testing::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Payload p = testing::random_payload(rng, 64);
    std::string text = encode_payload(p);
    ASSERT_EQ(decode_payload(text), p) << text;
  }
}

TEST(PayloadProperty, EncodingShape) {
  testing::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    Payload p = testing::random_payload(rng, 64);
    std::string text = encode_payload(p);
    std::size_t groups = (p.size() + 3) / 4;
    std::size_t spaces = groups == 0 ? 0 : groups - 1;
    ASSERT_EQ(text.size(), p.size() * 2 + spaces);
    for (char c : text) ASSERT_TRUE(c == ' ' || std::isdigit(static_cast<unsigned char>(c)) || (c >= 'A' && c <= 'F'));
  }
}

}  // namespace
}  // namespace tut
