import type { CorpusStatsDoc, GraphDoc, NeighborsDoc, WalksDoc } from "./types.js";

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

/** Thin typed client for the read-only /api/v1 endpoints. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path);
    if (!response.ok) {
      const body = (await response.json().catch(() => ({}))) as { detail?: string };
      throw new Error(body.detail ?? `request failed with ${response.status}`);
    }
    return (await response.json()) as T;
  }

  graph(): Promise<GraphDoc> {
    return this.get<GraphDoc>("/api/v1/graph");
  }

  neighbors(key: string): Promise<NeighborsDoc> {
    return this.get<NeighborsDoc>(`/api/v1/neighbors?key=${encodeURIComponent(key)}`);
  }

  walks(from: string, to: string, steps: number): Promise<WalksDoc> {
    const query = `from=${encodeURIComponent(from)}&to=${encodeURIComponent(to)}&steps=${steps}`;
    return this.get<WalksDoc>(`/api/v1/walks?${query}`);
  }

  /** Resolves to null when the service has no corpus snapshot (404). */
  async corpusStats(): Promise<CorpusStatsDoc | null> {
    const response = await this.fetchFn(this.baseUrl + "/api/v1/corpus/stats");
    if (response.status === 404) return null;
    if (!response.ok) throw new Error(`stats request failed with ${response.status}`);
    return (await response.json()) as CorpusStatsDoc;
  }
}
