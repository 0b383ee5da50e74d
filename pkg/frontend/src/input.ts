/**
 * Keyboard and mouse mapping.
 *
 * Camera motion (drag to orbit, shift-drag to grab) stays local; only the
 * axis controls produce wire commands: arrows pan, +/- zoom the input
 * domain, +/- with Z held zoom the height range, R resets.
 */

import { Command } from "./protocol.js";

export function keyToCommand(key: string, zHeld: boolean): Command | null {
  switch (key) {
    case "ArrowLeft":
      return { action: "pan", dx_steps: -1, dy_steps: 0 };
    case "ArrowRight":
      return { action: "pan", dx_steps: 1, dy_steps: 0 };
    case "ArrowUp":
      return { action: "pan", dx_steps: 0, dy_steps: 1 };
    case "ArrowDown":
      return { action: "pan", dx_steps: 0, dy_steps: -1 };
    case "+":
    case "=":
      return { action: "zoom", direction: "in", target: zHeld ? "z_axis" : "input_domain" };
    case "-":
    case "_":
      return { action: "zoom", direction: "out", target: zHeld ? "z_axis" : "input_domain" };
    case "r":
    case "R":
      return { action: "reset" };
    default:
      return null;
  }
}

export interface InputHandlers {
  sendCommand(command: Command): void;
  orbit(dx: number, dy: number): void;
  grab(dx: number, dy: number): void;
  dolly(factor: number): void;
}

/** Wire DOM events on `target` to commands and camera callbacks. */
export function attachInput(target: EventTarget, handlers: InputHandlers): () => void {
  let zHeld = false;
  let dragging = false;
  let grabbing = false;
  let lastX = 0;
  let lastY = 0;

  const keydown = (event: Event) => {
    const e = event as KeyboardEvent;
    if (e.key === "z" || e.key === "Z") {
      zHeld = true;
      return;
    }
    const command = keyToCommand(e.key, zHeld);
    if (command) {
      e.preventDefault();
      handlers.sendCommand(command);
    }
  };
  const keyup = (event: Event) => {
    const e = event as KeyboardEvent;
    if (e.key === "z" || e.key === "Z") zHeld = false;
  };
  const mousedown = (event: Event) => {
    const e = event as MouseEvent;
    dragging = true;
    grabbing = e.shiftKey;
    lastX = e.clientX;
    lastY = e.clientY;
  };
  const mousemove = (event: Event) => {
    if (!dragging) return;
    const e = event as MouseEvent;
    const dx = e.clientX - lastX;
    const dy = e.clientY - lastY;
    lastX = e.clientX;
    lastY = e.clientY;
    if (grabbing) {
      handlers.grab(dx, dy);
    } else {
      handlers.orbit(dx, dy);
    }
  };
  const mouseup = () => {
    dragging = false;
  };
  const wheel = (event: Event) => {
    const e = event as WheelEvent;
    e.preventDefault();
    handlers.dolly(e.deltaY > 0 ? 1.1 : 1 / 1.1);
  };

  target.addEventListener("keydown", keydown);
  target.addEventListener("keyup", keyup);
  target.addEventListener("mousedown", mousedown);
  target.addEventListener("mousemove", mousemove);
  target.addEventListener("mouseup", mouseup);
  target.addEventListener("mouseleave", mouseup);
  target.addEventListener("wheel", wheel);

  return () => {
    target.removeEventListener("keydown", keydown);
    target.removeEventListener("keyup", keyup);
    target.removeEventListener("mousedown", mousedown);
    target.removeEventListener("mousemove", mousemove);
    target.removeEventListener("mouseup", mouseup);
    target.removeEventListener("mouseleave", mouseup);
    target.removeEventListener("wheel", wheel);
  };
}
