"""Run-length text codec and the 2-bit binary record format."""

import io
import struct

import numpy as np
import pytest

from fdtsc import (
    MAGIC,
    DataError,
    FdVector,
    pack_trits,
    read_fdt,
    rle_decode,
    rle_encode,
    rle_expand,
    unpack_trits,
    write_fdt,
)

import property_suites as ps
from conftest import GOLDEN_S29
from oracles import naive_rle


def vec(trits, window=4):
    trits = np.asarray(trits, dtype=np.int8)
    return FdVector(trits, source_length=trits.size + window - 1, window=window)


class TestRleText:
    def test_single_run(self):
        assert rle_encode([0, 0, 0, 0, 0]) == "5#0"

    def test_alternation(self):
        assert rle_encode([1, -1, 1]) == "1#1,1#-1,1#1"

    def test_worked_vector(self):
        s = GOLDEN_S29
        assert rle_encode(s) == naive_rle(s)
        assert rle_expand(rle_encode(s)).tolist() == list(s)

    def test_runs_are_maximal(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            t = rng.integers(-1, 2, size=rng.integers(1, 60)).tolist()
            text = rle_encode(t)
            values = [tok.split("#")[1] for tok in text.split(",")]
            assert all(a != b for a, b in zip(values, values[1:]))
            assert rle_expand(text).tolist() == t

    def test_expand_accepts_non_maximal_runs(self):
        assert rle_expand("3#1,2#1").tolist() == [1, 1, 1, 1, 1]

    def test_expand_accepts_whitespace(self):
        assert rle_expand(" 2#0 , 1#-1 ").tolist() == [0, 0, -1]

    @pytest.mark.parametrize(
        "text,message",
        [
            ("", "empty run-length string"),
            ("   ", "empty run-length string"),
            ("3", "malformed run token"),
            ("a#1", "malformed run token"),
            ("2#1#0", "malformed run token"),
            ("0#1", "non-positive run count"),
            ("-2#0", "non-positive run count"),
            ("2#5", "value outside alphabet"),
            ("1#1,,1#0", "malformed run token"),
        ],
    )
    def test_expand_rejects_malformed_text(self, text, message):
        with pytest.raises(DataError, match=message):
            rle_expand(text)

    def test_decode_binds_provenance(self):
        v = rle_decode("7#1,7#0,12#-1,3#1", source_length=32, window=4)
        assert isinstance(v, FdVector)
        assert len(v) == 29
        assert v.source_length == 32
        assert v.window == 4

    def test_decode_rejects_length_mismatch(self):
        with pytest.raises(DataError, match="expected 29"):
            rle_decode("5#1", source_length=32, window=4)

    def test_encode_rejects_bad_values(self):
        with pytest.raises(DataError, match="values must be"):
            rle_encode([0, 2, 0])
        with pytest.raises(DataError, match="non-empty"):
            rle_encode([])

    def test_roundtrip_property(self):
        assert ps.run_rle_roundtrip(500) == 500


class TestBinaryPayload:
    def test_all_plus_quad(self):
        record = pack_trits(vec([1, 1, 1, 1]))
        assert record[-1] == 0x55

    def test_leading_minus(self):
        record = pack_trits(vec([-1, 0, 0, 0]))
        assert record[-1] == 0x02

    def test_record_layout(self):
        v = vec(GOLDEN_S29, window=4)
        record = pack_trits(v)
        # 12-byte header + ceil(29/4) payload bytes
        assert len(record) == 12 + 8
        magic, count, source_length = struct.unpack_from("<4sII", record)
        assert magic == MAGIC == b"FDT1"
        assert count == 29
        assert source_length == 32

    def test_record_smaller_than_raw_floats(self):
        v = vec(GOLDEN_S29, window=4)
        # the 32-point source at float32 occupies 128 bytes
        assert len(pack_trits(v)) < 32 * 4

    def test_roundtrip(self):
        v = vec(GOLDEN_S29, window=4)
        back = unpack_trits(pack_trits(v))
        assert np.array_equal(back.trits, v.trits)
        assert back.source_length == v.source_length
        assert back.window == v.window

    def test_roundtrip_property(self):
        assert ps.run_pack_roundtrip(500) == 500

    def test_size_law(self):
        rng = np.random.default_rng(13)
        for _ in range(200):
            n = int(rng.integers(1, 300))
            v = vec(rng.integers(-1, 2, size=n).astype(np.int8))
            assert len(pack_trits(v)) == 12 + (n + 3) // 4

    def test_stream_roundtrip_property(self):
        assert ps.run_stream_roundtrip(100) == 100


class TestBinaryErrors:
    def test_bad_magic(self):
        record = bytearray(pack_trits(vec([1, 0, -1])))
        record[0:4] = b"XXXX"
        with pytest.raises(DataError, match="bad magic"):
            unpack_trits(bytes(record))

    def test_truncated_header(self):
        with pytest.raises(DataError, match="truncated header"):
            unpack_trits(b"FDT1\x05")

    def test_truncated_payload(self):
        record = pack_trits(vec(GOLDEN_S29))
        with pytest.raises(DataError, match="payload too short"):
            unpack_trits(record[:-2])

    def test_reserved_bit_pattern(self):
        record = bytearray(pack_trits(vec([1, 1, 1, 1])))
        record[-1] = 0b11  # first field becomes the reserved code
        with pytest.raises(DataError, match="invalid trit encoding"):
            unpack_trits(bytes(record))

    def test_nonzero_padding(self):
        record = bytearray(pack_trits(vec([1, 1, 1])))
        record[-1] |= 0b01 << 6  # fourth field is padding for count=3
        with pytest.raises(DataError, match="padding"):
            unpack_trits(bytes(record))

    def test_trailing_bytes(self):
        record = pack_trits(vec([1, 0, -1]))
        with pytest.raises(DataError, match="trailing bytes"):
            unpack_trits(record + b"\x00")

    def test_zero_count(self):
        header = struct.pack("<4sII", b"FDT1", 0, 10)
        with pytest.raises(DataError, match="zero trits"):
            unpack_trits(header)

    def test_count_exceeding_source(self):
        # 5 trits from a source of 3 points implies window < 1
        header = struct.pack("<4sII", b"FDT1", 5, 3)
        with pytest.raises(DataError, match="5 trits for source length 3"):
            unpack_trits(header + b"\x00\x00")


class TestStream:
    def test_multi_record_roundtrip(self):
        vectors = [
            vec([1, 0, -1, -1, 0], window=3),
            vec(GOLDEN_S29, window=4),
            vec([0], window=7),
        ]
        buf = io.BytesIO()
        assert write_fdt(buf, vectors) == 3
        buf.seek(0)
        back = read_fdt(buf)
        assert len(back) == 3
        for a, b in zip(vectors, back):
            assert np.array_equal(a.trits, b.trits)
            assert a.source_length == b.source_length
            assert a.window == b.window

    def test_empty_stream(self):
        assert read_fdt(io.BytesIO(b"")) == []

    def test_error_names_record_index(self):
        buf = io.BytesIO()
        write_fdt(buf, [vec([1, 0, -1])])
        buf.write(b"FDT1")  # second record cut short
        buf.seek(0)
        with pytest.raises(DataError, match="record 1"):
            read_fdt(buf)
