// Copyright 2026 The BrainPaint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "brainpaint/archive.hpp"

#include <gtest/gtest.h>

#include <zlib.h>

#include "brainpaint/error.hpp"

namespace brainpaint {
namespace {

TEST(Archive, RoundTripSortsEntries) {
  std::vector<ArchiveEntry> in = {{"b.txt", "bee"}, {"a.png", std::string("\0\1\2", 3)}, {"c", ""}};
  const std::string zip = write_zip(in);
  const auto out = read_zip(zip);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].name, "a.png");
  EXPECT_EQ(out[0].data, std::string("\0\1\2", 3));
  EXPECT_EQ(out[1].name, "b.txt");
  EXPECT_EQ(out[2].data, "");
}

TEST(Archive, DeterministicRegardlessOfInputOrder) {
  const std::string a = write_zip({{"x", "1"}, {"y", "2"}});
  const std::string b = write_zip({{"y", "2"}, {"x", "1"}});
  EXPECT_EQ(a, b);
}

TEST(Archive, HeaderFieldsFollowTheZipLayout) {
  const std::string zip = write_zip({{"hello.txt", "hello"}});
  ASSERT_GE(zip.size(), 30u);
  EXPECT_EQ(zip.substr(0, 4), std::string("PK\x03\x04", 4));
  // CRC-32 at offset 14 equals zlib's crc32 of the payload.
  const uLong expect = crc32(0, reinterpret_cast<const Bytef*>("hello"), 5);
  std::uint32_t got = 0;
  for (int i = 0; i < 4; ++i) got |= static_cast<std::uint32_t>(static_cast<unsigned char>(zip[14 + i])) << (8 * i);
  EXPECT_EQ(got, expect);
  EXPECT_EQ(zip.substr(zip.size() - 22, 4), std::string("PK\x05\x06", 4));
}

TEST(Archive, DetectsCorruption) {
  std::string zip = write_zip({{"f", "payload"}});
  zip[30 + 1 + 2] ^= 0x55;  // inside the data of entry "f"
  EXPECT_THROW(read_zip(zip), Error);
  EXPECT_THROW(read_zip("PK"), Error);
}

TEST(Archive, RejectsDuplicateNames) { EXPECT_THROW(write_zip({{"a", "1"}, {"a", "2"}}), Error); }

}  // namespace
}  // namespace brainpaint
