/**
 * Entry point: `/?role=wizard` opens the operator console, anything else
 * the viewer. Both talk to the relay's /ws endpoint on the same host.
 */

import { ViewerApp } from "./viewer.js";
import { WizardApp } from "./wizard.js";

function wsUrl(): string {
  const proto = window.location.protocol === "https:" ? "wss:" : "ws:";
  return `${proto}//${window.location.host}/ws`;
}

const root = document.getElementById("app");
if (root) {
  const role = new URLSearchParams(window.location.search).get("role");
  if (role === "wizard") {
    new WizardApp(root, wsUrl()).start();
  } else {
    new ViewerApp(root, wsUrl()).start();
  }
}
