/*
   Copyright 2026 The NFP Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <nfp/crypto/bytes.hpp>

namespace nfp::codec {

//! RFC 1952 gzip with a zeroed mtime and no file name, so equal input gives equal output.
[[nodiscard]] Bytes gzip_compress(ByteView data, int level = 9);

//! Throws DecodingError on corrupt input, trailing garbage, or output above `max_output`.
[[nodiscard]] Bytes gzip_decompress(ByteView data, std::size_t max_output = 64u << 20);

}  // namespace nfp::codec
