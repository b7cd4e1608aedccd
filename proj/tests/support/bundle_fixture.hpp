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

// A synthetic application shaped like the evaluation game's bundle: about 338 KB before
// compression, roughly 60% of it already-compressed graphics carried as base64.

#include <map>
#include <random>
#include <string>
#include <vector>

#include <nfp/svg/bundle.hpp>

namespace nfp::test {

struct AppSources {
    std::string entry{"main.js"};
    std::map<std::string, std::string> sources;
    std::vector<svg::Asset> assets;
};

inline std::string random_word(std::mt19937_64& rng, std::size_t len) {
    static constexpr char kAlpha[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    std::string w;
    for (std::size_t i = 0; i < len; ++i) w += kAlpha[rng() % (sizeof(kAlpha) - 1)];
    return w;
}

// One module of plausible code: repetitive structure with high-entropy literals mixed in.
inline std::string synthetic_module(std::mt19937_64& rng, const std::string& name, std::size_t target) {
    std::string out = "// " + name + "\n";
    int n = 0;
    while (out.size() < target) {
        const std::string fn = "f_" + random_word(rng, 6);
        out += "export function " + fn + "(state, event) {\n";
        out += "  const key = \"" + random_word(rng, 24) + "\";\n";
        out += "  const text = \"" + random_word(rng, 300) + "\";\n";
        out += "  if (event.type === \"" + random_word(rng, 8) + "\") {\n";
        out += "    state.cells[" + std::to_string(rng() % 100) + "] = { hit: " + (rng() % 2 ? "true" : "false") + ", key };\n";
        out += "  }\n  return render(state, \"" + random_word(rng, 16) + "\", " + std::to_string(rng() % 100000) + ");\n}\n";
        ++n;
    }
    return out;
}

inline AppSources evaluation_app(std::uint64_t seed = 338) {
    std::mt19937_64 rng{seed};
    AppSources app;
    app.sources["main.js"] =
        "import { f_boot } from \"./core/boot.js\";\nimport \"./ui/lobby.js\";\nimport \"./ui/board.js\";\nimport \"./net/chain.js\";\n"
        "f_boot(NFP_ASSETS);\n";
    app.sources["core/boot.js"] = "import { render } from \"./render.js\";\nexport function f_boot(assets) { return render({ cells: [] }, \"boot\", 0); }\n";
    app.sources["core/render.js"] = "export function render(state, label, n) { return [label, n, state.cells.length]; }\n";
    app.sources["ui/lobby.js"] = "import { render } from \"../core/render.js\";\n" + synthetic_module(rng, "lobby", 36'000);
    app.sources["ui/board.js"] = "import { render } from \"../core/render.js\";\n" + synthetic_module(rng, "board", 55'000);
    app.sources["net/chain.js"] = "import { render } from \"../core/render.js\";\n" + synthetic_module(rng, "chain", 45'000);

    auto blob = [&](std::size_t n) {
        Bytes b(n);
        for (auto& x : b) x = static_cast<std::uint8_t>(rng());
        return b;
    };
    app.assets.push_back({"sprites.webp", "image/webp", blob(98'000)});
    app.assets.push_back({"desert.webp", "image/webp", blob(46'000)});
    app.assets.push_back({"ui.woff2", "font/woff2", blob(8'000)});
    return app;
}

}  // namespace nfp::test
