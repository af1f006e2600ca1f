// Minimal fetch-based client of the session server. One class per live
// session; every mutation or query round-trips through the command endpoint.

import type { CommandReply, ScenarioDoc, SessionInfo } from "./protocol.js";

export class ServerError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function expectOk(resp: Response): Promise<unknown> {
  if (!resp.ok) {
    throw new ServerError(resp.status, await resp.text());
  }
  return resp.json();
}

export class SessionClient {
  private constructor(
    public readonly endpoint: string,
    public readonly sessionId: string,
    public info: SessionInfo,
  ) {}

  /** Create a fresh session; omit the scenario to use the server default. */
  static async connect(
    endpoint: string,
    scenario?: ScenarioDoc,
    k?: number,
  ): Promise<SessionClient> {
    const resp = await fetch(`${endpoint}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ scenario: scenario ?? null, k: k ?? null }),
    });
    const info = (await expectOk(resp)) as SessionInfo;
    return new SessionClient(endpoint, info.session_id, info);
  }

  async command(op: string, args: Record<string, unknown> = {}): Promise<CommandReply> {
    const resp = await fetch(`${this.endpoint}/sessions/${this.sessionId}/command`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ op, args }),
    });
    return (await expectOk(resp)) as CommandReply;
  }

  /** Reply result of a command, throwing on a command-level error. */
  async result<T>(op: string, args: Record<string, unknown> = {}): Promise<T> {
    const reply = await this.command(op, args);
    if (!reply.ok || reply.result === null) {
      throw new ServerError(400, reply.error?.message ?? `command ${op} failed`);
    }
    return reply.result as T;
  }

  async digest(): Promise<string> {
    const resp = await fetch(`${this.endpoint}/sessions/${this.sessionId}/digest`);
    const body = (await expectOk(resp)) as { digest: string };
    return body.digest;
  }

  async serverScenario(): Promise<ScenarioDoc> {
    const resp = await fetch(`${this.endpoint}/scenario`);
    return (await expectOk(resp)) as ScenarioDoc;
  }

  async close(): Promise<void> {
    await expectOk(
      await fetch(`${this.endpoint}/sessions/${this.sessionId}`, { method: "DELETE" }),
    );
  }
}
