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

#include <zlib.h>

#include <algorithm>
#include <cstdint>

#include "brainpaint/error.hpp"

namespace brainpaint {

namespace {

// 1980-01-01 00:00:00 in DOS format.
constexpr std::uint16_t kDosTime = 0;
constexpr std::uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;

constexpr std::uint32_t kLocalSignature = 0x04034b50;
constexpr std::uint32_t kCentralSignature = 0x02014b50;
constexpr std::uint32_t kEndSignature = 0x06054b50;

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t crc_of(std::string_view data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::size_t offset = 0;
  while (offset < data.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(data.size() - offset, 1u << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data() + offset), chunk);
    offset += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

[[noreturn]] void bad_zip(const std::string& message) {
  throw Error(ErrorKind::kInput, "invalid_zip", message);
}

struct Reader {
  std::string_view bytes;

  std::uint16_t u16(std::size_t at) const {
    if (at + 2 > bytes.size()) bad_zip("truncated archive");
    return static_cast<std::uint16_t>(static_cast<std::uint8_t>(bytes[at]) |
                                      (static_cast<std::uint8_t>(bytes[at + 1]) << 8));
  }
  std::uint32_t u32(std::size_t at) const {
    return static_cast<std::uint32_t>(u16(at)) | (static_cast<std::uint32_t>(u16(at + 2)) << 16);
  }
  std::string_view slice(std::size_t at, std::size_t n) const {
    if (at > bytes.size() || n > bytes.size() - at) bad_zip("truncated archive");
    return bytes.substr(at, n);
  }
};

}  // namespace

std::string write_zip(std::vector<ArchiveEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const ArchiveEntry& a, const ArchiveEntry& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].name == entries[i - 1].name) {
      throw Error(ErrorKind::kIo, "duplicate_archive_entry", "duplicate entry " + entries[i].name);
    }
  }
  if (entries.size() > 0xffff) throw Error(ErrorKind::kIo, "archive_too_large", "too many entries");
  std::string out;
  std::string central;
  for (const ArchiveEntry& e : entries) {
    if (e.data.size() >= 0xffffffffu || out.size() >= 0xffffffffu || e.name.size() > 0xffff) {
      throw Error(ErrorKind::kIo, "archive_too_large", "entry " + e.name + " exceeds ZIP32 limits");
    }
    const std::uint32_t crc = crc_of(e.data);
    const auto size = static_cast<std::uint32_t>(e.data.size());
    const auto offset = static_cast<std::uint32_t>(out.size());
    const auto name_len = static_cast<std::uint16_t>(e.name.size());

    put32(out, kLocalSignature);
    put16(out, 20);  // version needed
    put16(out, 0);   // flags
    put16(out, 0);   // stored
    put16(out, kDosTime);
    put16(out, kDosDate);
    put32(out, crc);
    put32(out, size);
    put32(out, size);
    put16(out, name_len);
    put16(out, 0);
    out += e.name;
    out += e.data;

    put32(central, kCentralSignature);
    put16(central, 20);  // version made by
    put16(central, 20);
    put16(central, 0);
    put16(central, 0);
    put16(central, kDosTime);
    put16(central, kDosDate);
    put32(central, crc);
    put32(central, size);
    put32(central, size);
    put16(central, name_len);
    put16(central, 0);  // extra
    put16(central, 0);  // comment
    put16(central, 0);  // disk
    put16(central, 0);  // internal attributes
    put32(central, 0);  // external attributes
    put32(central, offset);
    central += e.name;
  }
  const auto central_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  put32(out, kEndSignature);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put32(out, static_cast<std::uint32_t>(central.size()));
  put32(out, central_offset);
  put16(out, 0);
  return out;
}

std::vector<ArchiveEntry> read_zip(std::string_view bytes) {
  Reader r{bytes};
  if (bytes.size() < 22) bad_zip("too short for a ZIP archive");
  std::size_t end = bytes.size() - 22;
  while (r.u32(end) != kEndSignature) {
    if (end == 0 || bytes.size() - end > 22 + 0xffff) bad_zip("end of central directory not found");
    --end;
  }
  const std::uint16_t count = r.u16(end + 10);
  std::size_t at = r.u32(end + 16);
  std::vector<ArchiveEntry> entries;
  for (std::uint16_t i = 0; i < count; ++i) {
    if (r.u32(at) != kCentralSignature) bad_zip("bad central directory record");
    const std::uint16_t method = r.u16(at + 10);
    const std::uint32_t crc = r.u32(at + 16);
    const std::uint32_t size = r.u32(at + 20);
    const std::uint16_t name_len = r.u16(at + 28);
    const std::uint16_t extra_len = r.u16(at + 30);
    const std::uint16_t comment_len = r.u16(at + 32);
    const std::uint32_t local = r.u32(at + 42);
    std::string name(r.slice(at + 46, name_len));
    if (method != 0) bad_zip("entry " + name + " is compressed");
    if (r.u32(local) != kLocalSignature) bad_zip("bad local header for " + name);
    const std::size_t data_at = local + 30 + r.u16(local + 26) + r.u16(local + 28);
    std::string data(r.slice(data_at, size));
    if (crc_of(data) != crc) bad_zip("CRC mismatch in " + name);
    entries.push_back({std::move(name), std::move(data)});
    at += 46 + name_len + extra_len + comment_len;
  }
  return entries;
}

}  // namespace brainpaint
