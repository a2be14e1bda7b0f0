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

#include "tut/interface.hpp"

#include <gtest/gtest.h>

namespace tut {
namespace {

InterfaceSpec dss_spec() {
  InterfaceSpec s;
  s.tut_name = "DSS";
  s.inbound = {{"KEYPAD", "D_CHANGE_BTN", "D_CHANGE_BTN"}, {"DUMP_MERIT_SENDER", "SEND", "T_MERIT_APPSTOSC"}};
  s.outbound = {{"GUI_PROXY", "D_STATE", "D_STATE_T"}};
  s.cm_slots = {{"D_CHANGE_BTN", 4}};
  return s;
}

ErrorCode code_of(const InterfaceSpec& s) {
  try {
    validate_interface(s);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kUsage;
}

TEST(InterfaceSpec, Lookups) {
  auto s = dss_spec();
  EXPECT_NE(s.find_inbound("KEYPAD", "D_CHANGE_BTN"), nullptr);
  EXPECT_EQ(s.find_inbound("KEYPAD", "SEND"), nullptr);
  EXPECT_TRUE(s.has_inbound_endpoint("DUMP_MERIT_SENDER"));
  EXPECT_TRUE(s.has_outbound_endpoint("CM"));
  EXPECT_FALSE(s.has_outbound_endpoint("KEYPAD"));
  EXPECT_TRUE(s.declares("CM", Direction::kOut, "D_CHANGE_BTN"));
  EXPECT_FALSE(s.declares("CM", Direction::kOut, "OTHER"));
  EXPECT_TRUE(s.declares("KEYPAD", Direction::kIn, "D_CHANGE_BTN"));
  EXPECT_EQ(s.type_of("CM", Direction::kOut, "D_CHANGE_BTN"), "D_CHANGE_BTN");
  EXPECT_EQ(s.type_of("GUI_PROXY", Direction::kOut, "D_STATE"), "D_STATE_T");
  EXPECT_FALSE(s.type_of("GUI_PROXY", Direction::kIn, "D_STATE").has_value());
}

TEST(ValidateInterface, Errors) {
  EXPECT_EQ(code_of(InterfaceSpec{}), ErrorCode::kEmptyInterface);
  auto dup = dss_spec();
  dup.inbound.push_back(dup.inbound.front());
  EXPECT_EQ(code_of(dup), ErrorCode::kDuplicateEndpoint);
  auto dup_slot = dss_spec();
  dup_slot.cm_slots.push_back({"D_CHANGE_BTN", 8});
  EXPECT_EQ(code_of(dup_slot), ErrorCode::kDuplicateEndpoint);
  auto bad = dss_spec();
  bad.outbound[0].name = "lower";
  EXPECT_EQ(code_of(bad), ErrorCode::kInvalidInterface);
  EXPECT_NO_THROW(validate_interface(dss_spec()));
}

TEST(InterfaceText, RoundTrip) {
  auto s = dss_spec();
  std::string text = serialize_interface(s);
  EXPECT_EQ(parse_interface(text), s);
  EXPECT_EQ(serialize_interface(parse_interface(text)), text);
}

TEST(InterfaceText, UnknownBlockRejected) {
  EXPECT_THROW(parse_interface("TASK\nNAME: X\n\nWIDGET\nNAME: Y\n"), Error);
}

}  // namespace
}  // namespace tut
