// Fetches the application entrypoint from the token's contract and runs it.
// Everything needed to speak the chain's query envelope lives here: X25519 and HKDF come
// from WebCrypto, AES-256-GCM-SIV is implemented below because WebCrypto lacks it.
(function () {
  "use strict";
  var NS = "urn:nfp:v1";
  var ENTRY = "app.js";
  var enc = new TextEncoder();
  var dec = new TextDecoder();

  // AES-256 block encryption.
  var SBOX = new Uint8Array(256);
  (function () {
    var p = 1, q = 1;
    do {
      p = p ^ ((p << 1) & 0xff) ^ (p & 0x80 ? 0x1b : 0);
      q ^= q << 1; q ^= q << 2; q ^= q << 4; q &= 0xff;
      if (q & 0x80) q ^= 0x09;
      var x = q ^ ((q << 1) | (q >> 7)) ^ ((q << 2) | (q >> 6)) ^ ((q << 3) | (q >> 5)) ^ ((q << 4) | (q >> 4));
      SBOX[p] = (x ^ 0x63) & 0xff;
    } while (p !== 1);
    SBOX[0] = 0x63;
  })();
  function xt(b) { return ((b << 1) ^ (b & 0x80 ? 0x1b : 0)) & 0xff; }
  function expandKey(key) {
    var w = new Uint8Array(240), rcon = 1;
    w.set(key);
    for (var i = 32; i < 240; i += 4) {
      var t = w.slice(i - 4, i);
      if (i % 32 === 0) {
        t = [SBOX[t[1]] ^ rcon, SBOX[t[2]], SBOX[t[3]], SBOX[t[0]]];
        rcon = xt(rcon);
      } else if (i % 32 === 16) {
        t = [SBOX[t[0]], SBOX[t[1]], SBOX[t[2]], SBOX[t[3]]];
      }
      for (var j = 0; j < 4; j++) w[i + j] = w[i + j - 32] ^ t[j];
    }
    return w;
  }
  function aesBlock(w, input) {
    var s = new Uint8Array(16), t = new Uint8Array(16), r, i, c;
    for (i = 0; i < 16; i++) s[i] = input[i] ^ w[i];
    for (r = 1; r <= 14; r++) {
      for (i = 0; i < 16; i++) t[i] = SBOX[s[(i + 4 * (i % 4)) % 16]];  // SubBytes + ShiftRows
      if (r < 14) {
        for (c = 0; c < 16; c += 4) {
          var a0 = t[c], a1 = t[c + 1], a2 = t[c + 2], a3 = t[c + 3], all = a0 ^ a1 ^ a2 ^ a3;
          t[c] ^= all ^ xt(a0 ^ a1); t[c + 1] ^= all ^ xt(a1 ^ a2);
          t[c + 2] ^= all ^ xt(a2 ^ a3); t[c + 3] ^= all ^ xt(a3 ^ a0);
        }
      }
      for (i = 0; i < 16; i++) s[i] = t[i] ^ w[16 * r + i];
    }
    return s;
  }

  // POLYVAL through GHASH on byte-reversed operands.
  var R = 0xe1n << 120n;
  function toBig(b) { var v = 0n; for (var i = 0; i < 16; i++) v = (v << 8n) | BigInt(b[i]); return v; }
  function fromBig(v) { var b = new Uint8Array(16); for (var i = 15; i >= 0; i--) { b[i] = Number(v & 0xffn); v >>= 8n; } return b; }
  function rev(b) { return Uint8Array.from(b).reverse(); }
  function gmul(x, y) {
    var z = 0n, v = y;
    for (var i = 127n; i >= 0n; i--) {
      if ((x >> i) & 1n) z ^= v;
      v = v & 1n ? (v >> 1n) ^ R : v >> 1n;
    }
    return z;
  }
  function polyval(h, data) {
    var hv = toBig(rev(h));
    hv = hv & 1n ? (hv >> 1n) ^ R : hv >> 1n;
    var y = 0n;
    for (var i = 0; i < data.length; i += 16) y = gmul(y ^ toBig(rev(data.subarray(i, i + 16))), hv);
    return rev(fromBig(y));
  }
  function pad16(b) { var out = new Uint8Array(Math.ceil(b.length / 16) * 16); out.set(b); return out; }
  function le64(n) { var b = new Uint8Array(8), v = BigInt(n); for (var i = 0; i < 8; i++) { b[i] = Number(v & 0xffn); v >>= 8n; } return b; }
  function cat() {
    var n = 0, i, off = 0;
    for (i = 0; i < arguments.length; i++) n += arguments[i].length;
    var out = new Uint8Array(n);
    for (i = 0; i < arguments.length; i++) { out.set(arguments[i], off); off += arguments[i].length; }
    return out;
  }
  function sivKeys(key, nonce) {
    var w = expandKey(key), parts = [];
    for (var i = 0; i < 6; i++) parts.push(aesBlock(w, cat(new Uint8Array([i, 0, 0, 0]), nonce)).subarray(0, 8));
    return { auth: cat(parts[0], parts[1]), enc: expandKey(cat(parts[2], parts[3], parts[4], parts[5])) };
  }
  function sivTag(k, nonce, pt, aad) {
    var s = polyval(k.auth, cat(pad16(aad), pad16(pt), le64(aad.length * 8), le64(pt.length * 8)));
    for (var i = 0; i < 12; i++) s[i] ^= nonce[i];
    s[15] &= 0x7f;
    return aesBlock(k.enc, s);
  }
  function ctr(k, tag, data) {
    var cb = Uint8Array.from(tag), out = new Uint8Array(data.length);
    cb[15] |= 0x80;
    for (var i = 0; i < data.length; i += 16) {
      var ks = aesBlock(k.enc, cb);
      for (var j = 0; j < 16 && i + j < data.length; j++) out[i + j] = data[i + j] ^ ks[j];
      for (var c = 0; c < 4 && ++cb[c] === 0; c++);
    }
    return out;
  }
  function sivSeal(key, nonce, pt, aad) {
    var k = sivKeys(key, nonce), tag = sivTag(k, nonce, pt, aad);
    return cat(ctr(k, tag, pt), tag);
  }
  function sivOpen(key, nonce, sealed, aad) {
    if (sealed.length < 16) throw new Error("sealed input too short");
    var k = sivKeys(key, nonce), tag = sealed.subarray(sealed.length - 16);
    var pt = ctr(k, tag, sealed.subarray(0, sealed.length - 16)), want = sivTag(k, nonce, pt, aad), diff = 0;
    for (var i = 0; i < 16; i++) diff |= want[i] ^ tag[i];
    if (diff) throw new Error("authentication failed");
    return pt;
  }

  function hex(b) { return Array.from(b, function (x) { return (x < 16 ? "0" : "") + x.toString(16); }).join(""); }
  function unhex(s) { var b = new Uint8Array(s.length / 2); for (var i = 0; i < b.length; i++) b[i] = parseInt(s.substr(2 * i, 2), 16); return b; }
  function b64url(b) { return btoa(String.fromCharCode.apply(null, b)).replace(/\+/g, "-").replace(/\//g, "_").replace(/=+$/, ""); }
  function unb64(s) { var bin = atob(s), b = new Uint8Array(bin.length); for (var i = 0; i < bin.length; i++) b[i] = bin.charCodeAt(i); return b; }

  // Envelope: ephemeral_pub || nonce || GCM-SIV(HKDF(X25519(secret, consensus)), aad = ephemeral_pub).
  async function envelopeKey(secret, pub, peer) {
    var subtle = crypto.subtle;
    var priv = await subtle.importKey("jwk", { kty: "OKP", crv: "X25519", d: b64url(secret), x: b64url(pub) }, { name: "X25519" }, false, ["deriveBits"]);
    var peerKey = await subtle.importKey("raw", peer, { name: "X25519" }, false, []);
    var shared = new Uint8Array(await subtle.deriveBits({ name: "X25519", public: peerKey }, priv, 256));
    var ikm = await subtle.importKey("raw", shared, "HKDF", false, ["deriveBits"]);
    return new Uint8Array(await subtle.deriveBits({ name: "HKDF", hash: "SHA-256", salt: new Uint8Array(0), info: enc.encode("nfp-envelope-v1") }, ikm, 256));
  }
  async function ephemeral() {
    var pair = await crypto.subtle.generateKey({ name: "X25519" }, true, ["deriveBits"]);
    var jwk = await crypto.subtle.exportKey("jwk", pair.privateKey);
    return { secret: unb64(jwk.d.replace(/-/g, "+").replace(/_/g, "/")), pub: new Uint8Array(await crypto.subtle.exportKey("raw", pair.publicKey)) };
  }
  async function sealRequest(eph, consensus, nonce, plaintext) {
    var key = await envelopeKey(eph.secret, eph.pub, consensus);
    return { key: key, wire: cat(eph.pub, nonce, sivSeal(key, nonce, plaintext, eph.pub)) };
  }
  function openResponse(key, request, wire) {
    var pub = request.subarray(0, 32), nonce = Uint8Array.from(request.subarray(32, 44));
    nonce[11] ^= 1;
    if (hex(wire.subarray(0, 32)) !== hex(pub) || hex(wire.subarray(32, 44)) !== hex(nonce)) throw new Error("response does not match request");
    return sivOpen(key, nonce, wire.subarray(44), pub);
  }

  // Canonical JSON: sorted keys, no whitespace, same as the chain's encoder.
  function canonical(v) {
    if (Array.isArray(v)) return "[" + v.map(canonical).join(",") + "]";
    if (v && typeof v === "object") return "{" + Object.keys(v).sort().map(function (k) { return JSON.stringify(k) + ":" + canonical(v[k]); }).join(",") + "}";
    return JSON.stringify(v);
  }

  async function query(endpoint, contract, msg) {
    var base = endpoint.replace(/\/+$/, "");
    var pk = await (await fetch(base + "/consensus_pubkey")).json();
    var eph = await ephemeral(), nonce = crypto.getRandomValues(new Uint8Array(12));
    var req = await sealRequest(eph, unhex(pk.pubkey), nonce, enc.encode(canonical(msg)));
    var res = await fetch(base + "/query", { method: "POST", headers: { "content-type": "application/json" }, body: JSON.stringify({ contract: contract, envelope: hex(req.wire) }) });
    if (!res.ok) throw new Error("query failed with HTTP " + res.status);
    var reply = JSON.parse(dec.decode(openResponse(req.key, req.wire, unhex((await res.json()).envelope))));
    if (reply.error) throw new Error(reply.error.kind + ": " + reply.error.message);
    return reply.ok;
  }
  async function gunzip(bytes) {
    var stream = new Blob([bytes]).stream().pipeThrough(new DecompressionStream("gzip"));
    return new Uint8Array(await new Response(stream).arrayBuffer());
  }

  var api = { sivSeal: sivSeal, sivOpen: sivOpen, polyval: polyval, aesBlock: aesBlock, expandKey: expandKey, envelopeKey: envelopeKey,
              sealRequest: sealRequest, openResponse: openResponse, canonical: canonical, hex: hex, unhex: unhex, gunzip: gunzip };
  if (typeof document === "undefined" || !document.getElementsByTagNameNS) {
    globalThis.NFP_BOOT = api;
    return;
  }

  var web = document.getElementsByTagNameNS(NS, "web")[0];
  var status = document.getElementById("nfp-status");
  function show(text) { if (status) status.textContent = text; }
  function attr(name) { return web ? web.getAttributeNS(NS, name) || "" : ""; }
  var meta = { endpoints: attr("lcds").split(",").map(function (s) { return s.trim(); }).filter(Boolean), contract: attr("contract"), token: attr("token") };
  var cacheKey = "nfp:" + meta.contract + ":" + ENTRY;

  function run(code, serial) {
    var s = document.createElementNS("http://www.w3.org/2000/svg", "script");
    s.textContent = code;
    globalThis.NFP_CONTEXT = { meta: meta, serial: serial, query: query, boot: api };
    document.documentElement.appendChild(s);
    show("running " + ENTRY + " #" + serial);
  }
  async function fetchLatest() {
    var lastError;
    for (var i = 0; i < meta.endpoints.length; i++) {
      try {
        var pkg = await query(meta.endpoints[i], meta.contract, { get_package: { package_id: ENTRY, tag: "latest" } });
        var data = unb64(pkg.data);
        if (pkg.content_encoding === "gzip") data = await gunzip(data);
        return { serial: pkg.serial, code: dec.decode(data), endpoint: meta.endpoints[i] };
      } catch (e) {
        lastError = e;
      }
    }
    throw lastError || new Error("no endpoints configured");
  }
  async function boot() {
    var cached = null;
    try { cached = JSON.parse(localStorage.getItem(cacheKey) || "null"); } catch (e) { cached = null; }
    if (cached) {
      run(cached.code, cached.serial);
      fetchLatest().then(function (pkg) {
        if (pkg.serial > cached.serial) {
          localStorage.setItem(cacheKey, JSON.stringify({ serial: pkg.serial, code: pkg.code }));
          show("update #" + pkg.serial + " ready, reopen to apply");
        }
      }, function () {});
      return;
    }
    show("fetching " + ENTRY + "...");
    try {
      var pkg = await fetchLatest();
      try { localStorage.setItem(cacheKey, JSON.stringify({ serial: pkg.serial, code: pkg.code })); } catch (e) { /* storage may be unavailable on file: */ }
      run(pkg.code, pkg.serial);
    } catch (e) {
      show("offline: " + e.message);
    }
  }
  var button = document.getElementById("nfp-connect");
  if (button) button.addEventListener("click", function () { button.style.display = "none"; boot(); });
})();
