import { describe, expect, it } from "vitest";

import { formatCount, formatIntensity, formatSeconds } from "../src/format.js";

describe("formatCount", () => {
  it("matches the service's table style", () => {
    expect(formatCount(68719476736)).toBe("69G");
    expect(formatCount(67108864)).toBe("67M");
    expect(formatCount(184683593728)).toBe("185G");
    expect(formatCount(301989888)).toBe("302M");
    expect(formatCount(155e12)).toBe("155T");
    expect(formatCount(87.38e12)).toBe("87T");
    expect(formatCount(1.344e12)).toBe("1T");
    expect(formatCount(960e9)).toBe("960G");
    expect(formatCount(327840)).toBe("328K");
    expect(formatCount(4096)).toBe("4K");
    expect(formatCount(512)).toBe("512");
    expect(formatCount(0)).toBe("0");
  });
});

describe("formatIntensity", () => {
  it("integer above 100, two decimals below", () => {
    expect(formatIntensity(1024)).toBe("1024");
    expect(formatIntensity(113.78)).toBe("114");
    expect(formatIntensity(1.25)).toBe("1.25");
    expect(formatIntensity(0.9918)).toBe("0.99");
    expect(formatIntensity(0.99951)).toBe("1");
    expect(formatIntensity(0.25)).toBe("0.25");
    expect(formatIntensity(0)).toBe("0");
  });
});

describe("formatSeconds", () => {
  it("uses engineering units at three significant digits", () => {
    expect(formatSeconds(1.5)).toBe("1.5s");
    expect(formatSeconds(0.0175)).toBe("17.5ms");
    expect(formatSeconds(4.43e-4)).toBe("443us");
    expect(formatSeconds(2.1e-8)).toBe("21ns");
    expect(formatSeconds(0)).toBe("0s");
  });
});
