/**
 * The wizard console: a text box standing in for the human operator's
 * transcription, plus the "start transcription" control that broadcasts
 * the processing status while the operator types.
 *
 * Submitting sends set_equation; parse failures come back as
 * equation_update frames with an error and are shown inline with a caret
 * at the reported position. If another wizard already holds the session,
 * the console drops to read-only.
 */

import { RelayConnection, SocketFactory } from "./connection.js";
import { ServerMessage } from "./protocol.js";

export interface WizardOptions {
  socketFactory?: SocketFactory;
  reconnectDelayMs?: number;
}

export class WizardApp {
  readonly connection: RelayConnection;
  readOnly = false;

  private input: HTMLInputElement;
  private submit: HTMLButtonElement;
  private transcribe: HTMLButtonElement;
  private statusLine: HTMLElement;
  private errorBox: HTMLElement;
  private confirmation: HTMLElement;
  private noticeBox: HTMLElement;
  private banner: HTMLElement;

  constructor(root: HTMLElement, url: string, options: WizardOptions = {}) {
    root.innerHTML = `
      <div class="console">
        <h1>wizard console</h1>
        <div class="banner hidden"></div>
        <div class="notice hidden"></div>
        <label>equation transcription
          <input class="equation-input" type="text"
                 placeholder="z = sin(x) + cos(y)" spellcheck="false">
        </label>
        <div class="buttons">
          <button class="transcribe">Start transcription</button>
          <button class="submit">Render equation</button>
        </div>
        <div class="status-line">status: idle</div>
        <div class="confirmation"></div>
        <pre class="parse-error hidden"></pre>
      </div>
    `;
    this.input = root.querySelector(".equation-input") as HTMLInputElement;
    this.submit = root.querySelector(".submit") as HTMLButtonElement;
    this.transcribe = root.querySelector(".transcribe") as HTMLButtonElement;
    this.statusLine = root.querySelector(".status-line") as HTMLElement;
    this.errorBox = root.querySelector(".parse-error") as HTMLElement;
    this.confirmation = root.querySelector(".confirmation") as HTMLElement;
    this.noticeBox = root.querySelector(".notice") as HTMLElement;
    this.banner = root.querySelector(".banner") as HTMLElement;

    this.connection = new RelayConnection(
      url,
      "wizard",
      {
        onMessage: (msg) => this.handleMessage(msg),
        onBanner: (text) => this.setBanner(text),
      },
      { socketFactory: options.socketFactory, reconnectDelayMs: options.reconnectDelayMs },
    );

    this.transcribe.addEventListener("click", () => {
      if (this.readOnly) return;
      this.connection.send({ type: "set_status", status: "processing" });
    });
    this.submit.addEventListener("click", () => this.submitEquation());
    this.input.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") this.submitEquation();
    });
  }

  start(): void {
    this.connection.connect();
  }

  stop(): void {
    this.connection.close();
  }

  submitEquation(): void {
    if (this.readOnly) return;
    this.connection.send({ type: "set_equation", source: this.input.value });
  }

  statusText(): string {
    return this.statusLine.textContent ?? "";
  }

  errorText(): string {
    return this.errorBox.classList.contains("hidden") ? "" : this.errorBox.textContent ?? "";
  }

  handleMessage(msg: ServerMessage): void {
    switch (msg.type) {
      case "protocol_error":
        if (msg.code === "wizard_taken") {
          this.readOnly = true;
          this.input.disabled = true;
          this.submit.disabled = true;
          this.transcribe.disabled = true;
          this.noticeBox.textContent =
            "another wizard holds this session; console is read-only";
          this.noticeBox.classList.remove("hidden");
        } else {
          this.setBanner(`server refused: ${msg.code}`);
        }
        return;
      case "status_update":
        this.statusLine.textContent = `status: ${msg.status}`;
        return;
      case "equation_update":
        if (msg.error === null) {
          this.errorBox.classList.add("hidden");
          this.confirmation.textContent = `rendered: ${msg.canonical}`;
        } else {
          const caret = " ".repeat(msg.error.position) + "^";
          this.errorBox.textContent = `${msg.source}\n${caret}\n${msg.error.reason} at position ${msg.error.position}`;
          this.errorBox.classList.remove("hidden");
        }
        return;
      default:
        return;
    }
  }

  private setBanner(text: string | null): void {
    if (text === null) {
      this.banner.classList.add("hidden");
      this.banner.textContent = "";
    } else {
      this.banner.textContent = text;
      this.banner.classList.remove("hidden");
    }
  }
}
