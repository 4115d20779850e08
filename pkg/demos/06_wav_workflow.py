##############################################################################
# The over-the-air workflow: export a modulated burst as a 16-bit WAV, play
# it through real speakers, record with a laptop microphone, decode the
# capture.  Here the "capture" is simulated, but the files are the real
# interchange format (also reachable via the CLI: `airmodem encode/decode`).
##############################################################################

import numpy as np

from airmodem import (
    AudioSignal,
    ChannelSpec,
    NoiseSpec,
    PskConfig,
    apply_channel,
    correlate_delay,
    dpsk_demodulate,
    dpsk_modulate,
    read_wav,
    write_wav,
)

config = PskConfig()
header = np.array([1, 0] * 8)
payload = np.array([int(b) for b in format(0xC3A5, "016b")])
print(f"payload 0xC3A5 -> {''.join(map(str, payload))}")

## sender: one continuous DPSK stream, known header bits leading

burst = dpsk_modulate(np.concatenate([header, payload]), config)
write_wav(burst, "demo06_burst.wav")
print(f"wrote demo06_burst.wav ({burst.duration_seconds:.3f} s at "
      f"{config.sample_rate_hz} Hz) - play this through speakers")

## 'microphone': delay, attenuation, cafe chatter, then a WAV capture.
## The chatter is set to a fixed loudness (RMS 0.25, about half the signal's)
## rather than a carrier-bin SNR: conversation is loud broadband but has
## almost no power left at 19.2 kHz, so the link barely notices it.

channel = ChannelSpec(
    delay_samples=1234, gain=0.6,
    noise=NoiseSpec("lowpass_voice", 0.0, config.carrier_hz, fixed_scale=0.25), seed=8,
)
padded = AudioSignal(np.concatenate([burst.samples, np.zeros(9600)]), config.sample_rate_hz)
capture = apply_channel(padded, channel)
write_wav(capture.signal, "demo06_capture.wav")
print(f"wrote demo06_capture.wav (clipped {capture.clip_count} samples)")

## receiver: locate the header by correlation, then demodulate

recording, spec = read_wav("demo06_capture.wav")
print(f"read capture: {recording.num_samples} samples at {spec.sample_rate_hz} Hz")

template = dpsk_modulate(header, config)
offset = correlate_delay(recording, template, max_delay_samples=4800)
print(f"header found at sample {offset} (true delay 1234)")

trace = dpsk_demodulate(recording, config, start_offset_samples=offset)
decoded = trace.decisions[header.size : header.size + payload.size]
errors = int(np.sum(decoded != payload))
print(f"decoded {''.join(map(str, decoded))} ({errors} bit errors)")
value = int("".join(map(str, decoded)), 2)
print(f"recovered word: 0x{value:04X}")
