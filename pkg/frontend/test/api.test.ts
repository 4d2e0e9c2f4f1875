import { describe, expect, it } from "vitest";
import {
  BrightsegClient, BusyError, NotFoundError, ValidationError,
} from "../src/api.js";

interface Recorded {
  url: string;
  init?: RequestInit;
}

function mockFetch(status: number, body: unknown, headers: Record<string, string> = {}) {
  const calls: Recorded[] = [];
  const impl = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    const payload = body instanceof ArrayBuffer ? body : JSON.stringify(body);
    return new Response(payload, {
      status,
      headers: { "Content-Type": "application/json", ...headers },
    });
  };
  return { impl, calls };
}

describe("request shapes", () => {
  it("putParams sends a JSON PUT to the session", async () => {
    const { impl, calls } = mockFetch(200, { config_hash: "h" });
    const client = new BrightsegClient("http://svc", impl);
    await client.putParams("s1", { lb: 2.71, nav: 3 });
    expect(calls[0].url).toBe("http://svc/sessions/s1/params");
    expect(calls[0].init?.method).toBe("PUT");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ lb: 2.71, nav: 3 });
  });

  it("segment posts with no body", async () => {
    const { impl, calls } = mockFetch(200, { config_hash: "h" });
    const client = new BrightsegClient("", impl);
    await client.segment("s1");
    expect(calls[0].url).toBe("/sessions/s1/segment");
    expect(calls[0].init?.method).toBe("POST");
  });

  it("createSession posts multipart form data", async () => {
    const { impl, calls } = mockFetch(201, { session_id: "s1", width: 4,
                                             height: 4, channels: 3 });
    const client = new BrightsegClient("", impl);
    const created = await client.createSession(new Blob([new Uint8Array(4)]), "x.png");
    expect(created.session_id).toBe("s1");
    expect(calls[0].init?.body).toBeInstanceOf(FormData);
  });

  it("putProfile sends the step list", async () => {
    const { impl, calls } = mockFetch(200, { config_hash: "h" });
    const client = new BrightsegClient("", impl);
    await client.putProfile("s1", [{ type: "erode", kernel: 3 }], "tight");
    const body = JSON.parse(String(calls[0].init?.body));
    expect(body.name).toBe("tight");
    expect(body.steps).toEqual([{ type: "erode", kernel: 3 }]);
  });

  it("artifact fetches keep the config hash header", async () => {
    const png = new Uint8Array([137, 80, 78, 71]).buffer;
    const { impl } = mockFetch(200, png, { "X-Config-Hash": "abc123" });
    const client = new BrightsegClient("", impl);
    const artifact = await client.export("s1");
    expect(artifact.configHash).toBe("abc123");
    expect(new Uint8Array(artifact.bytes)[0]).toBe(137);
  });
});

describe("error mapping", () => {
  it("422 becomes ValidationError with the server detail", async () => {
    const { impl } = mockFetch(422, { detail: "nav must be in [0, 10]" });
    const client = new BrightsegClient("", impl);
    await expect(client.putParams("s1", { nav: 11 }))
      .rejects.toThrowError(ValidationError);
    await expect(client.putParams("s1", { nav: 11 }))
      .rejects.toThrow("nav must be in [0, 10]");
  });

  it("409 becomes BusyError", async () => {
    const { impl } = mockFetch(409, { detail: "a run is already in flight" });
    const client = new BrightsegClient("", impl);
    await expect(client.segment("s1")).rejects.toThrowError(BusyError);
  });

  it("404 becomes NotFoundError", async () => {
    const { impl } = mockFetch(404, { detail: "unknown session nope" });
    const client = new BrightsegClient("", impl);
    await expect(client.mask("nope")).rejects.toThrowError(NotFoundError);
  });
});
