import type {
  AnalyzeRequest,
  ApiErrorBody,
  HardwareDocument,
  NetworkReport,
  Presets,
  Series,
  SweepRequest,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody,
  ) {
    super(body.field ? `${body.error}: ${body.field}` : body.error);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
    private readonly base: string = "",
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    const payload = await response.json();
    if (!response.ok) throw new ApiError(response.status, payload as ApiErrorBody);
    return payload as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  presets(): Promise<Presets> {
    return this.request<Presets>("/api/presets");
  }

  hardwareDocument(name: string): Promise<HardwareDocument> {
    return this.request<HardwareDocument>(`/api/presets/hardware/${name}`);
  }

  modelDocument(name: string): Promise<Record<string, unknown>> {
    return this.request<Record<string, unknown>>(`/api/presets/models/${name}`);
  }

  analyze(request: AnalyzeRequest): Promise<NetworkReport> {
    return this.post<NetworkReport>("/api/analyze", request);
  }

  sweep(request: SweepRequest): Promise<Series[]> {
    return this.post<Series[]>("/api/sweep", request);
  }
}

/**
 * Keeps one logical request in flight per knob group: every issue() gets a
 * monotonic id and only the newest id is current, so responses that arrive
 * late are recognized as stale and dropped instead of overwriting fresher
 * state.
 */
export class StaleResponseGuard {
  private counter = 0;

  issue(): number {
    return ++this.counter;
  }

  isCurrent(id: number): boolean {
    return id === this.counter;
  }
}
